#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace metaspace::fixtures {

/// Jaro-Winkler written straight from the textbook definition: collect
/// matched index sets first, then compare the matched subsequences.
inline double jw_reference(const std::u32string& a, const std::u32string& b)
{
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    const long longest = static_cast<long>(std::max(a.size(), b.size()));
    const long bound = std::max(0L, longest / 2 - 1);
    std::set<long> used_b;
    std::vector<long> ai, bi;
    for (long i = 0; i < static_cast<long>(a.size()); ++i) {
        for (long j = std::max(0L, i - bound); j <= std::min<long>(static_cast<long>(b.size()) - 1, i + bound); ++j) {
            if (a[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)] && !used_b.count(j)) {
                used_b.insert(j);
                ai.push_back(i);
                break;
            }
        }
    }
    bi.assign(used_b.begin(), used_b.end());
    const double m = static_cast<double>(ai.size());
    if (m == 0) {
        return 0.0;
    }
    int mismatched = 0;
    for (std::size_t k = 0; k < ai.size(); ++k) {
        if (a[static_cast<std::size_t>(ai[k])] != b[static_cast<std::size_t>(bi[k])]) {
            ++mismatched;
        }
    }
    const double t = mismatched / 2.0;
    const double jaro = (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) + (m - t) / m) / 3.0;
    int l = 0;
    while (l < 4 && l < static_cast<int>(std::min(a.size(), b.size())) && a[static_cast<std::size_t>(l)] == b[static_cast<std::size_t>(l)]) {
        ++l;
    }
    return jaro + l * 0.1 * (1.0 - jaro);
}

inline std::u32string widen(const std::string& s)
{
    return std::u32string(s.begin(), s.end());
}

/// Whitespace split, lowercase; enough for ASCII fixtures.
inline std::map<std::string, int> bag_of(const std::string& text)
{
    std::map<std::string, int> out;
    std::string cur;
    for (char c : text + " ") {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            ++out[cur];
            cur.clear();
        }
    }
    return out;
}

} // namespace metaspace::fixtures
