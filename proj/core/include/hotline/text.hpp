#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace hotline {

// Character counts throughout the library are Unicode scalar values, not
// bytes: one CJK character counts as 1. Invalid bytes count as one character
// each so counting never fails on malformed input.

/// Number of Unicode code points in a UTF-8 string.
std::size_t u8_length(std::string_view s);

/// Byte offset of the n-th code point (s.size() if n >= length).
std::size_t u8_byte_offset(std::string_view s, std::size_t n);

/// First n code points as a view into s.
std::string_view u8_prefix(std::string_view s, std::size_t n);

/// First n code points as an owned string.
std::string u8_truncate(std::string_view s, std::size_t n);

/// Substitutes every "{key}" occurrence with its mapped value. Unknown
/// placeholders are left verbatim.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values);

}  // namespace hotline
