#include "metaspace/metaphor.hpp"

#include "metaspace/errors.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

SpatialMetaphor SpatialMetaphor::make(std::string_view keyword, std::optional<std::string> locale)
{
    std::string trimmed = utf8::trim(keyword);
    if (trimmed.empty()) {
        throw AttributeError("InvalidMetaphor", "keyword", "metaphor keyword is empty");
    }
    if (utf8::length(trimmed) > kMaxLength) {
        throw AttributeError("InvalidMetaphor", "keyword",
                             "metaphor keyword exceeds " + std::to_string(kMaxLength) + " characters");
    }
    return SpatialMetaphor(std::move(trimmed), std::move(locale));
}

std::array<const std::string*, 8> attribute_fields(const MetaphorAttributes& a)
{
    return {&a.atmosphere,         &a.gathering_type, &a.connecting_environment, &a.temporal_engagement,
            &a.communication_flow, &a.actor_type,     &a.content_orientation,    &a.participation_control};
}

std::array<std::string*, 8> attribute_fields(MetaphorAttributes& a)
{
    return {&a.atmosphere,         &a.gathering_type, &a.connecting_environment, &a.temporal_engagement,
            &a.communication_flow, &a.actor_type,     &a.content_orientation,    &a.participation_control};
}

void validate(const MetaphorAttributes& attrs)
{
    auto fields = attribute_fields(attrs);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (utf8::trim(*fields[i]).empty()) {
            throw AttributeError("EmptyValue", std::string(kAttributeKeys[i]),
                                 "attribute " + std::string(kAttributeKeys[i]) + " is empty");
        }
    }
}

std::optional<nlohmann::json> first_object_literal(std::string_view text)
{
    for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < text.size(); ++i) {
            const char c = text[i];
            if (in_string) {
                if (escaped) {
                    escaped = false;
                } else if (c == '\\') {
                    escaped = true;
                } else if (c == '"') {
                    in_string = false;
                }
                continue;
            }
            if (c == '"') {
                in_string = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}') {
                if (--depth == 0) {
                    auto parsed = nlohmann::json::parse(text.substr(start, i - start + 1), nullptr, false);
                    if (!parsed.is_discarded() && parsed.is_object()) {
                        return parsed;
                    }
                    break;
                }
            }
        }
    }
    return std::nullopt;
}

MetaphorAttributes parse_attributes(std::string_view raw_response)
{
    auto object = first_object_literal(raw_response);
    if (!object) {
        throw AttributeError("MalformedResponse", "", "no JSON object found in provider response");
    }
    for (const auto& [key, value] : object->items()) {
        bool known = false;
        for (auto expected : kAttributeKeys) {
            known = known || key == expected;
        }
        if (!known) {
            throw AttributeError("UnexpectedKey", key, "unexpected attribute key " + key);
        }
    }
    MetaphorAttributes attrs;
    auto fields = attribute_fields(attrs);
    for (std::size_t i = 0; i < kAttributeKeys.size(); ++i) {
        const std::string key(kAttributeKeys[i]);
        auto it = object->find(key);
        if (it == object->end()) {
            throw AttributeError("MissingAttribute", key, "missing attribute " + key);
        }
        if (!it->is_string() || utf8::trim(it->get<std::string>()).empty()) {
            throw AttributeError("EmptyValue", key, "attribute " + key + " has no text value");
        }
        *fields[i] = utf8::trim(it->get<std::string>());
    }
    return attrs;
}

nlohmann::ordered_json to_json(const MetaphorAttributes& attrs)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    auto fields = attribute_fields(attrs);
    for (std::size_t i = 0; i < kAttributeKeys.size(); ++i) {
        out[std::string(kAttributeKeys[i])] = *fields[i];
    }
    return out;
}

std::string render_template(const MetaphorAttributes& attrs)
{
    validate(attrs);
    std::string out;
    out += "In a space that feels " + attrs.atmosphere;
    out += ", people come together " + attrs.gathering_type;
    out += ", often connecting " + attrs.connecting_environment;
    out += ". They usually " + attrs.temporal_engagement;
    out += ", interact through " + attrs.communication_flow;
    out += ", and present themselves using " + attrs.actor_type;
    out += ". Most people are here to " + attrs.content_orientation;
    out += ", and they have the option to " + attrs.participation_control + ".";
    return out;
}

} // namespace metaspace
