#include "portfolio/normalize.hpp"

#include <cstdint>

namespace portfolio {
namespace {

// Decodes one UTF-8 code point starting at i and advances i. Malformed bytes
// decode to U+FFFD one byte at a time, so bad input degrades instead of
// derailing the scan.
std::uint32_t next_codepoint(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<std::uint8_t>(s[k]); };
    const std::uint8_t b0 = byte(i);
    if (b0 < 0x80) {
        i += 1;
        return b0;
    }
    int len = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        i += 1;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(len) > s.size()) {
        i += 1;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        const std::uint8_t b = byte(i + static_cast<std::size_t>(k));
        if ((b & 0xC0) != 0x80) {
            i += 1;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

// Latin Extended-A (U+0100..U+017F) base letters; both cases fold to the
// same uppercase ASCII. Digraph ligatures expand (IJ, OE).
const char* fold_extended_a(std::uint32_t cp) {
    switch (cp) {
        case 0x132: case 0x133: return "IJ";
        case 0x152: case 0x153: return "OE";
        default: break;
    }
    if (cp <= 0x105) return "A";
    if (cp <= 0x10D) return "C";
    if (cp <= 0x111) return "D";
    if (cp <= 0x11B) return "E";
    if (cp <= 0x123) return "G";
    if (cp <= 0x127) return "H";
    if (cp <= 0x131) return "I";
    if (cp <= 0x135) return "J";
    if (cp <= 0x138) return "K";
    if (cp <= 0x142) return "L";
    if (cp <= 0x14B) return "N";
    if (cp <= 0x151) return "O";
    if (cp <= 0x159) return "R";
    if (cp <= 0x161) return "S";
    if (cp <= 0x167) return "T";
    if (cp <= 0x173) return "U";
    if (cp <= 0x175) return "W";
    if (cp <= 0x178) return "Y";
    if (cp <= 0x17E) return "Z";
    return "S";  // 0x17F, long s
}

// Decomposable Latin letters -> uppercase ASCII; nullptr means "drop".
const char* fold_latin(std::uint32_t cp) {
    if (cp == 0xD7 || cp == 0xF7) return nullptr;  // multiply, divide signs
    if (cp == 0xDF) return "SS";                   // sharp s
    if (cp == 0xFF) return "Y";                    // y with diaeresis
    if (cp >= 0xE0 && cp <= 0xFE) cp -= 0x20;      // lowercase block -> uppercase
    if (cp >= 0xC0 && cp <= 0xDE) {
        switch (cp) {
            case 0xC6: return "AE";
            case 0xC7: return "C";
            case 0xD0: return "D";   // eth
            case 0xD1: return "N";
            case 0xD8: return "O";
            case 0xDD: return "Y";
            case 0xDE: return "TH";  // thorn
            default: break;
        }
        if (cp <= 0xC5) return "A";
        if (cp <= 0xCB) return "E";
        if (cp <= 0xCF) return "I";
        if (cp <= 0xD6) return "O";
        return "U";  // 0xD9..0xDC
    }
    if (cp >= 0x100 && cp <= 0x17F) return fold_extended_a(cp);
    switch (cp) {  // Romanian comma-below letters live outside Extended-A
        case 0x218: case 0x219: return "S";
        case 0x21A: case 0x21B: return "T";
        default: return nullptr;
    }
}

bool is_unicode_space(std::uint32_t cp) {
    return cp == 0xA0 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x202F || cp == 0x205F ||
           cp == 0x3000;
}

}  // namespace

std::string normalize_title(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    const auto push = [&](char c) {
        if (pending_space && !out.empty()) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
    };
    const auto push_str = [&](const char* s) {
        while (*s) push(*s++);
    };

    std::size_t i = 0;
    while (i < raw.size()) {
        const std::uint32_t cp = next_codepoint(raw, i);
        if (cp < 0x80) {
            const char c = static_cast<char>(cp);
            if (c >= 'a' && c <= 'z') {
                push(static_cast<char>(c - 'a' + 'A'));
            } else if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
                push(c);
            } else if (c == '&') {
                pending_space = true;
                push_str("AND");
                pending_space = true;
            } else if (c == '-') {
                push('-');
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
                       c == '\v') {
                pending_space = true;
            }
            // remaining ASCII (punctuation, controls) is dropped
        } else if (const char* folded = fold_latin(cp)) {
            push_str(folded);
        } else if (is_unicode_space(cp)) {
            pending_space = true;
        } else if (cp == 0x2010 || cp == 0x2011) {  // unicode hyphens
            push('-');
        }
        // every other code point is dropped
    }
    return out;
}

}  // namespace portfolio
