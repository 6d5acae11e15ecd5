#include "metaspace/text_metrics.hpp"

#include <algorithm>
#include <cmath>

#include "metaspace/errors.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

std::vector<std::string> tokenize(std::string_view text)
{
    std::vector<std::string> out;
    std::u32string current;
    for (char32_t c : utf8::decode(text)) {
        if (utf8::is_word_char(c)) {
            current.push_back(utf8::fold_case(c));
        } else if (!current.empty()) {
            out.push_back(utf8::encode(current));
            current.clear();
        }
    }
    if (!current.empty()) {
        out.push_back(utf8::encode(current));
    }
    return out;
}

TokenBag::TokenBag(std::string_view text)
{
    auto tokens = tokenize(text);
    std::sort(tokens.begin(), tokens.end());
    for (auto& t : tokens) {
        if (!m_counts.empty() && m_counts.back().first == t) {
            ++m_counts.back().second;
        } else {
            m_counts.emplace_back(std::move(t), 1);
        }
    }
}

bool TokenBag::contains(std::string_view token) const
{
    auto it = std::lower_bound(m_counts.begin(), m_counts.end(), token,
                               [](const auto& entry, std::string_view t) { return entry.first < t; });
    return it != m_counts.end() && it->first == token;
}

namespace {

void require_tokens(const TokenBag& bag, const char* which)
{
    if (bag.empty()) {
        throw MetricError("BlankInput", which, std::string(which) + " text has no word tokens");
    }
}

} // namespace

double lexical_overlap(const TokenBag& candidate, std::span<const TokenBag> priors)
{
    require_tokens(candidate, "candidate");
    if (priors.empty()) {
        return 0.0;
    }
    std::size_t shared = 0;
    for (const auto& [token, count] : candidate.counts()) {
        (void)count;
        for (const auto& p : priors) {
            if (p.contains(token)) {
                ++shared;
                break;
            }
        }
    }
    return static_cast<double>(shared) / static_cast<double>(candidate.distinct());
}

double lexical_overlap(std::string_view candidate, std::span<const std::string> priors)
{
    std::vector<TokenBag> bags;
    bags.reserve(priors.size());
    for (const auto& p : priors) {
        bags.emplace_back(p);
    }
    return lexical_overlap(TokenBag(candidate), bags);
}

double cosine_similarity(const TokenBag& a, const TokenBag& b)
{
    require_tokens(a, "first");
    require_tokens(b, "second");
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (const auto& [t, c] : a.counts()) {
        na += static_cast<double>(c) * c;
    }
    for (const auto& [t, c] : b.counts()) {
        nb += static_cast<double>(c) * c;
    }
    auto ia = a.counts().begin();
    auto ib = b.counts().begin();
    while (ia != a.counts().end() && ib != b.counts().end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            dot += static_cast<double>(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

double cosine_similarity(std::string_view a, std::string_view b) { return cosine_similarity(TokenBag(a), TokenBag(b)); }

double jaro(std::u32string_view a, std::u32string_view b)
{
    if (a.empty() && b.empty()) {
        return 1.0;
    }
    if (a.empty() || b.empty()) {
        return 0.0;
    }
    const std::size_t window = std::max(a.size(), b.size()) / 2;
    const std::size_t reach = window > 0 ? window - 1 : 0;
    std::vector<char> a_hit(a.size(), 0);
    std::vector<char> b_hit(b.size(), 0);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t lo = i > reach ? i - reach : 0;
        const std::size_t hi = std::min(b.size(), i + reach + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (!b_hit[j] && a[i] == b[j]) {
                a_hit[i] = b_hit[j] = 1;
                ++matches;
                break;
            }
        }
    }
    if (matches == 0) {
        return 0.0;
    }
    std::size_t half_transpositions = 0;
    for (std::size_t i = 0, j = 0; i < a.size(); ++i) {
        if (!a_hit[i]) {
            continue;
        }
        while (!b_hit[j]) {
            ++j;
        }
        if (a[i] != b[j]) {
            ++half_transpositions;
        }
        ++j;
    }
    const double m = static_cast<double>(matches);
    const double t = static_cast<double>(half_transpositions) / 2.0;
    return (m / a.size() + m / b.size() + (m - t) / m) / 3.0;
}

double jaro_winkler(std::u32string_view a, std::u32string_view b)
{
    const double j = jaro(a, b);
    std::size_t prefix = 0;
    while (prefix < 4 && prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) {
        ++prefix;
    }
    return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

double jaro_winkler(std::string_view a, std::string_view b)
{
    return jaro_winkler(utf8::decode(a), utf8::decode(b));
}

std::span<const std::string> last_three(std::span<const std::string> history)
{
    return history.size() <= kHistoryWindow ? history : history.last(kHistoryWindow);
}

bool passes_post_constraints(std::string_view candidate, std::span<const std::string> history)
{
    const auto window = last_three(history);
    if (window.empty()) {
        return true;
    }
    const TokenBag bag(candidate);
    std::vector<TokenBag> priors;
    for (const auto& p : window) {
        priors.emplace_back(p);
    }
    if (lexical_overlap(bag, priors) >= kPostOverlapLimit) {
        return false;
    }
    for (const auto& p : priors) {
        if (!p.empty() && cosine_similarity(bag, p) >= kPostCosineLimit) {
            return false;
        }
    }
    return true;
}

bool passes_comment_constraints(std::string_view candidate, std::span<const std::string> history)
{
    const auto window = last_three(history);
    if (window.empty()) {
        return true;
    }
    return lexical_overlap(candidate, window) < kCommentOverlapLimit;
}

bool channel_name_is_distinct(std::string_view name, std::span<const std::string> existing)
{
    const auto cand = utf8::decode(name);
    for (const auto& e : existing) {
        if (jaro_winkler(cand, utf8::decode(e)) >= kChannelNameLimit) {
            return false;
        }
    }
    return true;
}

} // namespace metaspace
