#pragma once

#include <stdexcept>
#include <string>

namespace dyne {

enum class ErrorKind {
    input,       // malformed token ids, sequences or texts
    shape,       // vector length / row width mismatch
    usage,       // caller violated a precondition (empty list, guard exceeded)
    format,      // a file failed to parse
    validation,  // parsed fine but breaks an invariant
    decode,      // search produced no viable candidate
    io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace dyne
