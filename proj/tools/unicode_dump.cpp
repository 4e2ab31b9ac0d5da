// Prints "<hex code point> <is_letter 0|1> <hex lowercase>" for every scalar
// value, one per line.
#include "polibench/unicode.hpp"

#include <cstdio>

int main() {
    for (char32_t cp = 0; cp <= 0x10FFFF; ++cp) {
        if (cp >= 0xD800 && cp <= 0xDFFF) continue;
        std::printf("%X %d %X\n", static_cast<unsigned>(cp), polibench::unicode::is_letter(cp) ? 1 : 0,
                    static_cast<unsigned>(polibench::unicode::to_lower(cp)));
    }
    return 0;
}
