#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace bsdelab {

/// Format a double with 17 significant digits (round-trip safe).
std::string format_double17(double v);

/// FNV-1a 64-bit hash of a byte string, rendered as 16 hex digits.
std::string fnv1a64_hex(std::string_view bytes);

std::string read_text_file(const std::string& path);   // throws std::runtime_error
void write_text_file(const std::string& path, std::string_view content);

}  // namespace bsdelab
