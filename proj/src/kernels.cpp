#include "metaspace/kernels.hpp"

#include <algorithm>
#include <bit>

#include "metaspace/utf8.hpp"

namespace metaspace::kernels {

double max_pairwise_jaro_winkler(std::span<const std::string> names, Exec exec)
{
    const auto n = static_cast<std::ptrdiff_t>(names.size());
    std::vector<std::u32string> decoded(names.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        decoded[i] = utf8::decode(names[i]);
    }
    double best = 0.0;
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            for (std::ptrdiff_t j = i + 1; j < n; ++j) {
                best = std::max(best, jaro_winkler(decoded[i], decoded[j]));
            }
        }
        return best;
    }
#pragma omp parallel for schedule(dynamic, 8) reduction(max : best)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::ptrdiff_t j = i + 1; j < n; ++j) {
            best = std::max(best, jaro_winkler(decoded[i], decoded[j]));
        }
    }
    return best;
}

namespace {

double safe_cosine(const TokenBag& a, const TokenBag& b)
{
    return a.empty() || b.empty() ? 0.0 : cosine_similarity(a, b);
}

HistoryScore score_item(const HistoryItem& item)
{
    HistoryScore s;
    if (item.candidate.empty() || item.priors.empty()) {
        return s;
    }
    s.overlap = lexical_overlap(item.candidate, item.priors);
    for (const auto& p : item.priors) {
        s.max_cosine = std::max(s.max_cosine, safe_cosine(item.candidate, p));
    }
    return s;
}

} // namespace

std::vector<double> cosine_matrix(std::span<const TokenBag> a, std::span<const TokenBag> b, Exec exec)
{
    const auto rows = static_cast<std::ptrdiff_t>(a.size());
    const std::size_t cols = b.size();
    std::vector<double> out(a.size() * cols, 0.0);
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                out[i * cols + j] = safe_cosine(a[i], b[j]);
            }
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            out[i * cols + j] = safe_cosine(a[i], b[j]);
        }
    }
    return out;
}

std::vector<double> jaccard_scores(std::uint32_t self, std::span<const std::uint32_t> others, Exec exec)
{
    const auto n = static_cast<std::ptrdiff_t>(others.size());
    std::vector<double> out(others.size(), 0.0);
    auto score = [self](std::uint32_t other) {
        const int uni = std::popcount(self | other);
        return uni == 0 ? 0.0 : static_cast<double>(std::popcount(self & other)) / uni;
    };
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            out[i] = score(others[i]);
        }
        return out;
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = score(others[i]);
    }
    return out;
}

std::vector<HistoryScore> history_similarity(std::span<const HistoryItem> items, Exec exec)
{
    const auto n = static_cast<std::ptrdiff_t>(items.size());
    std::vector<HistoryScore> out(items.size());
    if (exec == Exec::Serial) {
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            out[i] = score_item(items[i]);
        }
        return out;
    }
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = score_item(items[i]);
    }
    return out;
}

} // namespace metaspace::kernels
