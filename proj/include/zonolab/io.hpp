#pragma once

#include <cstdint>
#include <string>

namespace zonolab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// printf "%.17g": enough digits to round-trip a double.
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// 1-based line/column of a byte offset, for parse diagnostics.
std::pair<int, int> line_column(const std::string& text, std::size_t byte_offset);

}  // namespace zonolab
