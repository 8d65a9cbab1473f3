#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sqfull::cli {

inline constexpr std::string_view version = "0.1.0";

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_domain = 3;
inline constexpr int exit_capacity = 4;
inline constexpr int exit_convergence = 5;

// Accepts plain integers, underscores as digit separators (46_674_434) and
// scientific notation that denotes an integer (1e9, 2.5e3).
std::uint64_t parse_count(std::string_view text);

// Comma-separated list of parse_count values.
std::vector<std::uint64_t> parse_count_list(std::string_view text);

// 12 significant digits, '.' decimal point.
std::string format_real(double v);

// 64-bit FNV-1a of the output, as 16 hex digits.
std::string checksum(std::string_view data);

int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace sqfull::cli
