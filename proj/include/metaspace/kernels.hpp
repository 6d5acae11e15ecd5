#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "metaspace/text_metrics.hpp"

// Batch similarity kernels. Each has a serial reference and an OpenMP
// version; both must return identical results.
namespace metaspace::kernels {

enum class Exec { Serial, Parallel };

/// Largest Jaro-Winkler score over all unordered pairs; 0 for < 2 names.
double max_pairwise_jaro_winkler(std::span<const std::string> names, Exec exec = Exec::Parallel);

/// Row-major |a| x |b| matrix of cosine similarities (0 where a bag is empty).
std::vector<double> cosine_matrix(std::span<const TokenBag> a, std::span<const TokenBag> b,
                                  Exec exec = Exec::Parallel);

/// Jaccard of `self` against each mask in `others` (interest bitmasks).
std::vector<double> jaccard_scores(std::uint32_t self, std::span<const std::uint32_t> others,
                                   Exec exec = Exec::Parallel);

struct HistoryItem
{
    TokenBag candidate;
    std::vector<TokenBag> priors; ///< already trimmed to the comparison window
};

struct HistoryScore
{
    double overlap = 0.0;
    double max_cosine = 0.0;

    bool operator==(const HistoryScore&) const = default;
};

/// Overlap and worst-case cosine of each candidate against its priors.
std::vector<HistoryScore> history_similarity(std::span<const HistoryItem> items, Exec exec = Exec::Parallel);

} // namespace metaspace::kernels
