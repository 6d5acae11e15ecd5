#include "metaspace/utf8.hpp"

#include <cctype>

namespace metaspace::utf8 {

std::u32string decode(std::string_view text)
{
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(text[i]);
        char32_t cp = 0xFFFD;
        std::size_t extra = 0;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            extra = 1;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            extra = 2;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            extra = 3;
        } else {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        bool ok = true;
        for (std::size_t k = 1; k <= extra; ++k) {
            if (i + k >= n) {
                ok = false;
                break;
            }
            const auto bk = static_cast<unsigned char>(text[i + k]);
            if ((bk & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (bk & 0x3F);
        }
        if (!ok) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += extra + 1;
    }
    return out;
}

std::string encode(std::u32string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
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
    return out;
}

std::size_t length(std::string_view text)
{
    std::size_t count = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) {
            ++count;
        }
    }
    return count;
}

char32_t fold_case(char32_t c)
{
    if (c >= U'A' && c <= U'Z') {
        return c + 32;
    }
    if (c < 0x80) {
        return c;
    }
    // Latin-1 supplement, skipping the multiplication sign.
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) {
        return c + 32;
    }
    // Latin Extended-A: alternating upper/lower pairs.
    if (c >= 0x100 && c <= 0x137 && (c % 2) == 0) {
        return c + 1;
    }
    if (c >= 0x139 && c <= 0x148 && (c % 2) == 1) {
        return c + 1;
    }
    if (c >= 0x14A && c <= 0x177 && (c % 2) == 0) {
        return c + 1;
    }
    if (c == 0x178) {
        return 0xFF;
    }
    if (c >= 0x179 && c <= 0x17E && (c % 2) == 1) {
        return c + 1;
    }
    // Greek capitals (0x3A2 is unassigned).
    if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) {
        return c + 32;
    }
    // Cyrillic.
    if (c >= 0x400 && c <= 0x40F) {
        return c + 80;
    }
    if (c >= 0x410 && c <= 0x42F) {
        return c + 32;
    }
    return c;
}

bool is_word_char(char32_t c)
{
    if (c < 0x80) {
        return std::isalnum(static_cast<int>(c)) != 0;
    }
    if (c <= 0xBF || c == 0xD7 || c == 0xF7) {
        return false; // Latin-1 punctuation and symbols
    }
    if (c >= 0x2000 && c <= 0x2BFF) {
        return false; // general punctuation, arrows, math, dingbats
    }
    if (c >= 0x3000 && c <= 0x303F) {
        return false; // CJK punctuation
    }
    if (c >= 0xFE00 && c <= 0xFE0F) {
        return false; // variation selectors
    }
    if (c >= 0xFF00 && c <= 0xFF0F) {
        return false;
    }
    if (c >= 0x1F000 && c <= 0x1FAFF) {
        return false; // emoji and pictographs
    }
    if (c == 0xFFFD) {
        return false;
    }
    return true;
}

std::string trim(std::string_view text)
{
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) {
        --e;
    }
    return std::string(text.substr(b, e - b));
}

std::string to_lower_ascii(std::string_view text)
{
    std::string out(text);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

} // namespace metaspace::utf8
