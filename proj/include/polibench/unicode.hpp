#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace polibench::unicode {

/// Byte offset of the first invalid UTF-8 sequence, or nullopt if `text` is valid.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

bool is_letter(char32_t cp);
char32_t to_lower(char32_t cp);
bool is_white_space(char32_t cp);

/// Keeps only letters (general category L*), lowercased with the simple case
/// mapping. Invalid byte sequences are dropped.
std::string canonicalize(std::string_view text);

std::size_t code_point_count(std::string_view text);

/// Substring measured in code points. `text` must be valid UTF-8.
std::string_view substr_code_points(std::string_view text, std::size_t offset, std::size_t count);

void append_utf8(std::string& out, char32_t cp);

}  // namespace polibench::unicode
