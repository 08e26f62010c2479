#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hamcheck::utf8 {

struct DecodeResult {
    char32_t codepoint = 0;
    std::size_t length = 0;  // bytes consumed; 0 on malformed input
    bool ok = false;
};

/// Decodes the scalar value starting at `pos`. Rejects overlong forms,
/// surrogates and values above U+10FFFF; on malformed input returns
/// ok=false with length=1 so callers can resynchronize byte by byte.
inline DecodeResult decode(std::string_view text, std::size_t pos) {
    DecodeResult r;
    if (pos >= text.size()) return r;
    const auto byte = [&](std::size_t i) -> unsigned {
        return static_cast<unsigned char>(text[pos + i]);
    };
    const unsigned b0 = byte(0);
    auto malformed = [&] {
        r.ok = false;
        r.length = 1;
        return r;
    };
    if (b0 < 0x80) {
        r.codepoint = b0;
        r.length = 1;
        r.ok = true;
        return r;
    }
    std::size_t len;
    char32_t cp;
    if ((b0 & 0xE0u) == 0xC0u) { len = 2; cp = b0 & 0x1Fu; }
    else if ((b0 & 0xF0u) == 0xE0u) { len = 3; cp = b0 & 0x0Fu; }
    else if ((b0 & 0xF8u) == 0xF0u) { len = 4; cp = b0 & 0x07u; }
    else return malformed();
    if (pos + len > text.size()) return malformed();
    for (std::size_t i = 1; i < len; ++i) {
        if ((byte(i) & 0xC0u) != 0x80u) return malformed();
        cp = (cp << 6) | (byte(i) & 0x3Fu);
    }
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) return malformed();                  // overlong
    if (cp >= 0xD800 && cp <= 0xDFFF) return malformed();    // surrogate
    if (cp > 0x10FFFF) return malformed();
    r.codepoint = cp;
    r.length = len;
    r.ok = true;
    return r;
}

inline void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(char32_t cp) {
    std::string s;
    append(s, cp);
    return s;
}

} // namespace hamcheck::utf8
