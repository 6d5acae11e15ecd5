#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace metaspace {

/// The free-text description of a physical setting a user wants their
/// social space to feel like ("a rooftop party at sunset").
class SpatialMetaphor
{
public:
    static constexpr std::size_t kMaxLength = 500;

    /// Trims the keyword; throws AttributeError("InvalidMetaphor") when it is
    /// empty or longer than kMaxLength code points.
    static SpatialMetaphor make(std::string_view keyword, std::optional<std::string> locale = std::nullopt);

    const std::string& keyword() const noexcept { return m_keyword; }
    const std::optional<std::string>& locale() const noexcept { return m_locale; }

    bool operator==(const SpatialMetaphor&) const = default;

private:
    SpatialMetaphor(std::string keyword, std::optional<std::string> locale)
        : m_keyword(std::move(keyword)), m_locale(std::move(locale))
    {
    }

    std::string m_keyword;
    std::optional<std::string> m_locale;
};

/// Eight social attributes extracted from a metaphor. Values are opaque
/// free text; the only invariant is that none is empty.
struct MetaphorAttributes
{
    std::string atmosphere;
    std::string gathering_type;
    std::string connecting_environment;
    std::string temporal_engagement;
    std::string communication_flow;
    std::string actor_type;
    std::string content_orientation;
    std::string participation_control;

    bool operator==(const MetaphorAttributes&) const = default;
};

/// Object keys, in declaration order of MetaphorAttributes.
inline constexpr std::array<std::string_view, 8> kAttributeKeys = {
    "Atmosphere",        "GatheringType", "ConnectingEnvironment", "TemporalEngagement",
    "CommunicationFlow", "ActorType",     "ContentOrientation",    "ParticipationControl",
};

std::array<const std::string*, 8> attribute_fields(const MetaphorAttributes& attrs);
std::array<std::string*, 8> attribute_fields(MetaphorAttributes& attrs);

/// Throws AttributeError("EmptyValue", key) on the first blank field.
void validate(const MetaphorAttributes& attrs);

/// Parses provider output. The first balanced `{...}` that is valid JSON is
/// used; surrounding prose is ignored. Errors (AttributeError codes):
/// MalformedResponse, MissingAttribute, UnexpectedKey, EmptyValue.
MetaphorAttributes parse_attributes(std::string_view raw_response);

nlohmann::ordered_json to_json(const MetaphorAttributes& attrs);

/// The one-sentence description: "In a space that feels <atmosphere>, people
/// come together <gathering>, ...".
std::string render_template(const MetaphorAttributes& attrs);

/// Finds the first balanced object literal in `text` that parses as JSON
/// (string-aware brace matching). Shared by every parser of provider output.
std::optional<nlohmann::json> first_object_literal(std::string_view text);

} // namespace metaspace
