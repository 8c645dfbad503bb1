#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dyne {

/// Splits on ASCII whitespace, dropping empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view text);

/// Shortest decimal that parses back to the same double. Non-finite values
/// print as "inf", "-inf", "nan".
std::string format_double(double value);

/// Fixed 17 significant digits in scientific notation (always round-trips).
std::string format_double_sci(double value);

/// Strict full-string parse; accepts "inf" and "-inf".
std::optional<double> parse_double(std::string_view text);
std::optional<std::uint64_t> parse_u64(std::string_view text);

}  // namespace dyne
