#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metaspace {

/// Lowercased word tokens (maximal letter/digit runs) with multiplicities,
/// sorted by token.
class TokenBag
{
public:
    TokenBag() = default;
    explicit TokenBag(std::string_view text);

    const std::vector<std::pair<std::string, int>>& counts() const noexcept { return m_counts; }
    bool empty() const noexcept { return m_counts.empty(); }
    std::size_t distinct() const noexcept { return m_counts.size(); }
    bool contains(std::string_view token) const;

private:
    std::vector<std::pair<std::string, int>> m_counts;
};

std::vector<std::string> tokenize(std::string_view text);

inline constexpr double kPostOverlapLimit = 0.20;
inline constexpr double kPostCosineLimit = 0.20;
inline constexpr double kCommentOverlapLimit = 0.30;
inline constexpr double kChannelNameLimit = 0.70;
inline constexpr std::size_t kHistoryWindow = 3;

/// Share of the candidate's distinct tokens that occur anywhere in `priors`.
/// Throws MetricError("BlankInput") when the candidate has no tokens.
double lexical_overlap(std::string_view candidate, std::span<const std::string> priors);
double lexical_overlap(const TokenBag& candidate, std::span<const TokenBag> priors);

/// Cosine of raw term-frequency vectors. Throws MetricError("BlankInput").
double cosine_similarity(std::string_view a, std::string_view b);
double cosine_similarity(const TokenBag& a, const TokenBag& b);

/// Jaro and Jaro-Winkler over code points, case-sensitive.
double jaro(std::u32string_view a, std::u32string_view b);
double jaro_winkler(std::u32string_view a, std::u32string_view b);
double jaro_winkler(std::string_view a, std::string_view b);

/// The newest `kHistoryWindow` entries of an oldest-first history.
std::span<const std::string> last_three(std::span<const std::string> history);

bool passes_post_constraints(std::string_view candidate, std::span<const std::string> history);
bool passes_comment_constraints(std::string_view candidate, std::span<const std::string> history);
bool channel_name_is_distinct(std::string_view name, std::span<const std::string> existing);

} // namespace metaspace
