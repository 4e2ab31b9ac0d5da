#include "polibench/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace polibench::unicode {

namespace {

// Decodes one code point at `pos`, advancing it; returns a negative value for
// an ill-formed sequence (pos still advances past it).
UChar32 next_code_point(std::string_view text, std::size_t& pos) {
    const auto* s = reinterpret_cast<const std::uint8_t*>(text.data());
    const auto length = static_cast<std::int32_t>(text.size());
    auto i = static_cast<std::int32_t>(pos);
    UChar32 c;
    U8_NEXT(s, i, length, c);
    pos = static_cast<std::size_t>(i);
    return c;
}

}  // namespace

std::optional<std::size_t> find_invalid_utf8(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        if (next_code_point(text, pos) < 0) {
            return start;
        }
    }
    return std::nullopt;
}

bool is_letter(char32_t cp) {
    return (U_GET_GC_MASK(static_cast<UChar32>(cp)) & U_GC_L_MASK) != 0;
}

char32_t to_lower(char32_t cp) {
    return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

bool is_white_space(char32_t cp) {
    return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0;
}

void append_utf8(std::string& out, char32_t cp) {
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
    if (!error) {
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    }
}

std::string canonicalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const unsigned char byte = static_cast<unsigned char>(text[pos]);
        if (byte < 0x80) {
            ++pos;
            if (byte >= 'a' && byte <= 'z') {
                out.push_back(static_cast<char>(byte));
            } else if (byte >= 'A' && byte <= 'Z') {
                out.push_back(static_cast<char>(byte - 'A' + 'a'));
            }
            continue;
        }
        const UChar32 c = next_code_point(text, pos);
        if (c < 0 || !is_letter(static_cast<char32_t>(c))) {
            continue;
        }
        append_utf8(out, to_lower(static_cast<char32_t>(c)));
    }
    return out;
}

std::size_t code_point_count(std::string_view text) {
    std::size_t count = 0;
    for (const char ch : text) {
        // every byte that is not a continuation byte starts a code point
        if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) {
            ++count;
        }
    }
    return count;
}

std::string_view substr_code_points(std::string_view text, std::size_t offset, std::size_t count) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < offset && pos < text.size(); ++i) {
        next_code_point(text, pos);
    }
    const std::size_t begin = pos;
    for (std::size_t i = 0; i < count && pos < text.size(); ++i) {
        next_code_point(text, pos);
    }
    return text.substr(begin, pos - begin);
}

}  // namespace polibench::unicode
