#include "metaspace/gateway.hpp"

#include <algorithm>
#include <cctype>

#include "metaspace/errors.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

std::size_t count_sentences(std::string_view text)
{
    std::size_t n = 0;
    bool in_sentence = false;
    for (char c : text) {
        if (c == '.' || c == '!' || c == '?') {
            if (in_sentence) {
                ++n;
            }
            in_sentence = false;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            in_sentence = true;
        }
    }
    return n + (in_sentence ? 1 : 0);
}

std::size_t count_words(std::string_view text)
{
    std::size_t n = 0;
    bool in_word = false;
    for (char c : text) {
        const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!space && !in_word) {
            ++n;
        }
        in_word = !space;
    }
    return n;
}

bool starts_with_word(std::string_view text, std::string_view prefix)
{
    std::size_t i = 0;
    while (i < text.size() && !std::isalnum(static_cast<unsigned char>(text[i]))) {
        ++i;
    }
    if (text.size() - i < prefix.size()) {
        return false;
    }
    for (std::size_t k = 0; k < prefix.size(); ++k) {
        if (std::toupper(static_cast<unsigned char>(text[i + k])) != std::toupper(static_cast<unsigned char>(prefix[k]))) {
            return false;
        }
    }
    const std::size_t after = i + prefix.size();
    return after == text.size() || !std::isalnum(static_cast<unsigned char>(text[after]));
}

bool satisfies(const GenerationConstraints& c, std::string_view text)
{
    if (utf8::trim(text).empty()) {
        return false;
    }
    const std::size_t chars = utf8::length(text);
    if (chars < c.min_chars || (c.max_chars > 0 && chars > c.max_chars)) {
        return false;
    }
    if (c.max_sentences > 0 && count_sentences(text) > c.max_sentences) {
        return false;
    }
    if (c.max_words > 0 && count_words(text) > c.max_words) {
        return false;
    }
    for (const auto& p : c.forbidden_prefixes) {
        if (starts_with_word(text, p)) {
            return false;
        }
    }
    return !c.custom_check || c.custom_check(text);
}

const std::vector<std::string>& forbidden_post_openers()
{
    static const std::vector<std::string> words = {"JUST", "FINALLY", "FOUND", "HAD", "CURRENTLY", "CAME ACORSS"};
    return words;
}

GenerationConstraints post_constraints()
{
    GenerationConstraints c;
    c.min_chars = 120;
    c.max_chars = 150;
    c.max_sentences = 3;
    c.forbidden_prefixes = forbidden_post_openers();
    c.custom_name = "no_trailing_question";
    c.custom_check = [](std::string_view t) {
        auto s = utf8::trim(t);
        return !s.empty() && s.back() != '?';
    };
    return c;
}

GenerationConstraints ephemeral_constraints()
{
    GenerationConstraints c = post_constraints();
    c.min_chars = 30;
    c.max_chars = 40;
    c.max_sentences = 2;
    return c;
}

GenerationConstraints comment_constraints()
{
    GenerationConstraints c;
    c.min_chars = 8;
    c.max_chars = 160;
    c.max_sentences = 2;
    return c;
}

GenerationConstraints chat_constraints()
{
    GenerationConstraints c;
    c.min_chars = 2;
    c.max_sentences = 2;
    c.max_words = 12;
    return c;
}

Gateway::Gateway(std::shared_ptr<Provider> primary, Budget budget, std::shared_ptr<Provider> fallback,
                 std::ptrdiff_t max_in_flight)
    : m_primary(std::move(primary)),
      m_fallback(std::move(fallback)),
      m_budget(budget),
      m_in_flight(std::clamp<std::ptrdiff_t>(max_in_flight, 1, kMaxInFlight))
{
    if (!m_primary) {
        throw ProviderError("ProviderRejected", "", "gateway needs a provider");
    }
}

std::string Gateway::render(PromptId id, const Bindings& bindings) const
{
    return substitute(prompt(id), bindings);
}

Provider& Gateway::route(std::size_t estimated_tokens)
{
    if (!m_primary->metered() || m_degraded.load()) {
        return m_degraded.load() && m_fallback ? *m_fallback : *m_primary;
    }
    const std::uint64_t call_no = m_calls.fetch_add(1) + 1;
    const std::uint64_t tokens = m_tokens.fetch_add(estimated_tokens) + estimated_tokens;
    const bool over = (m_budget.max_calls > 0 && call_no > m_budget.max_calls) ||
                      (m_budget.max_tokens > 0 && tokens > m_budget.max_tokens);
    if (!over) {
        return *m_primary;
    }
    if (!m_fallback) {
        throw ProviderError("BudgetExceeded", std::string(m_primary->name()), "provider budget exhausted");
    }
    m_degraded.store(true);
    return *m_fallback;
}

std::string Gateway::generate(PromptId id, const Bindings& bindings, std::uint64_t seed,
                              const GenerationConstraints& constraints)
{
    GenerationRequest req{id, {}, render(id, bindings), &bindings, seed, &constraints};
    if (id == PromptId::AgentUser) {
        req.system = render(PromptId::AgentSystem, bindings);
    }
    Provider& provider = route((req.system.size() + req.user.size()) / 4 + 64);
    m_in_flight.acquire();
    struct Release
    {
        std::counting_semaphore<kMaxInFlight>& s;
        ~Release() { s.release(); }
    } release{m_in_flight};
    std::string text = provider.complete(req);
    if (&provider == m_primary.get() && m_primary->metered()) {
        m_tokens.fetch_add(text.size() / 4);
    }
    return text;
}

CheckedText Gateway::generate_checked(PromptId id, const Bindings& bindings, const GenerationConstraints& constraints,
                                      const TextCheck& check, std::uint64_t seed, int max_attempts)
{
    if (max_attempts < 1) {
        throw ProviderError("ProviderRejected", "max_attempts", "max_attempts must be at least 1");
    }
    CheckedText out;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        out.attempts = attempt;
        std::string text = utf8::trim(generate(id, bindings, mix_seed(seed, static_cast<std::uint64_t>(attempt)), constraints));
        if (satisfies(constraints, text) && (!check || check(text))) {
            out.text = std::move(text);
            return out;
        }
    }
    return out;
}

} // namespace metaspace
