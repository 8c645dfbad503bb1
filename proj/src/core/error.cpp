#include "dyne/error.hpp"

namespace dyne {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return "input error";
        case ErrorKind::shape: return "shape error";
        case ErrorKind::usage: return "usage error";
        case ErrorKind::format: return "format error";
        case ErrorKind::validation: return "validation error";
        case ErrorKind::decode: return "decode error";
        case ErrorKind::io: return "I/O error";
    }
    return "error";
}

}  // namespace dyne
