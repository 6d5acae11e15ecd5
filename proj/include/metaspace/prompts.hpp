#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace metaspace {

enum class PromptId : std::uint8_t {
    MetaphorConversion,
    FeatureMapping,
    ChatDyadic,
    ChatGroup,
    PostPersonal,
    PostPersonalEphemeral,
    PostChannel,
    PostChannelEphemeral,
    JoinChannel,
    AgentSystem,
    AgentUser,
    Comment,
};
inline constexpr std::size_t kPromptCount = 12;

struct PromptTemplate
{
    PromptId id;
    std::string name;
    std::string body;
    std::set<std::string> required; ///< every `${name}` slot in body
};

/// A scalar, or a list rendered joined with ", ".
using Binding = std::variant<std::string, std::vector<std::string>>;
using Bindings = std::map<std::string, Binding, std::less<>>;

std::span<const PromptTemplate> all_prompts();
const PromptTemplate& prompt(PromptId id);
const PromptTemplate* find_prompt(std::string_view name);

/// Names of the `${...}` slots in `body`, in order of first appearance.
std::vector<std::string> placeholders_in(std::string_view body);

std::string render_binding(const Binding& binding);

/// Fills every slot. Throws PromptError("UnboundPlaceholder", name). Bound
/// values have any "${" defused, so the output contains no slot and
/// substituting it again is a no-op.
std::string substitute(const PromptTemplate& tmpl, const Bindings& bindings);
std::string substitute(std::string_view body, const Bindings& bindings);

} // namespace metaspace
