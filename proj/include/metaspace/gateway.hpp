#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "metaspace/prompts.hpp"

namespace metaspace {

/// Hard bounds the stub always meets and the remote path retries towards.
/// Zero means unbounded.
struct GenerationConstraints
{
    std::size_t min_chars = 0;
    std::size_t max_chars = 0;
    std::size_t max_sentences = 0;
    std::size_t max_words = 0;
    std::vector<std::string> forbidden_prefixes;
    std::string custom_name;
    std::function<bool(std::string_view)> custom_check;
};

std::size_t count_sentences(std::string_view text);
std::size_t count_words(std::string_view text);

/// True when `text` starts with `prefix` as whole words, ignoring case.
bool starts_with_word(std::string_view text, std::string_view prefix);

bool satisfies(const GenerationConstraints& c, std::string_view text);

const std::vector<std::string>& forbidden_post_openers();
GenerationConstraints post_constraints();
GenerationConstraints ephemeral_constraints();
GenerationConstraints comment_constraints();
GenerationConstraints chat_constraints();

struct GenerationRequest
{
    PromptId prompt;
    std::string system; ///< empty unless the prompt has a system part
    std::string user;
    const Bindings* bindings = nullptr; ///< the slot values, incl. `ctx.*` hints
    std::uint64_t seed = 0;
    const GenerationConstraints* constraints = nullptr;
};

class Provider
{
public:
    virtual ~Provider() = default;
    virtual std::string complete(const GenerationRequest& request) = 0;
    virtual std::string_view name() const = 0;
    /// Offline providers skip budget accounting.
    virtual bool metered() const { return true; }
};

struct Budget
{
    std::uint64_t max_calls = 0;  ///< 0 = unlimited
    std::uint64_t max_tokens = 0; ///< rough estimate, 4 chars per token
};

struct CheckedText
{
    std::optional<std::string> text; ///< nullopt: discard the action
    int attempts = 0;
};

using TextCheck = std::function<bool(std::string_view)>;

class Gateway
{
public:
    static constexpr int kDefaultAttempts = 3;
    static constexpr std::ptrdiff_t kMaxInFlight = 64;

    /// Once the budget is spent, calls go to `fallback` when given and throw
    /// ProviderError("BudgetExceeded") otherwise.
    explicit Gateway(std::shared_ptr<Provider> primary, Budget budget = {},
                     std::shared_ptr<Provider> fallback = nullptr, std::ptrdiff_t max_in_flight = 4);

    std::string render(PromptId id, const Bindings& bindings) const;

    std::string generate(PromptId id, const Bindings& bindings, std::uint64_t seed,
                         const GenerationConstraints& constraints = {});

    /// Regenerates until both the constraints and `check` pass; attempt k uses
    /// a seed derived from (seed, k).
    CheckedText generate_checked(PromptId id, const Bindings& bindings, const GenerationConstraints& constraints,
                                 const TextCheck& check, std::uint64_t seed, int max_attempts = kDefaultAttempts);

    std::uint64_t calls() const noexcept { return m_calls.load(); }
    std::uint64_t tokens() const noexcept { return m_tokens.load(); }
    bool degraded() const noexcept { return m_degraded.load(); }
    std::string_view provider_name() const { return m_primary->name(); }

private:
    Provider& route(std::size_t estimated_tokens);

    std::shared_ptr<Provider> m_primary;
    std::shared_ptr<Provider> m_fallback;
    Budget m_budget;
    std::atomic<std::uint64_t> m_calls{0};
    std::atomic<std::uint64_t> m_tokens{0};
    std::atomic<bool> m_degraded{false};
    std::counting_semaphore<kMaxInFlight> m_in_flight;
};

} // namespace metaspace
