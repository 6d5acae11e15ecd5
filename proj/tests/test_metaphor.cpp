#include <gtest/gtest.h>

#include "metaspace/errors.hpp"
#include "metaspace/metaphor.hpp"

using namespace metaspace;

namespace {

MetaphorAttributes sample()
{
    return {"cozy and intimate",
            "around a shared meal",
            "through invitations among old friends",
            "linger for long evenings",
            "quiet one-on-one conversations",
            "close friends and family",
            "personal stories and recipes",
            "join only when invited"};
}

std::string object_text(const MetaphorAttributes& a)
{
    return to_json(a).dump();
}

} // namespace

TEST(Metaphor, RejectsBlankAndOversized)
{
    EXPECT_THROW(SpatialMetaphor::make(""), AttributeError);
    EXPECT_THROW(SpatialMetaphor::make("   \n"), AttributeError);
    EXPECT_THROW(SpatialMetaphor::make(std::string(501, 'a')), AttributeError);
    EXPECT_NO_THROW(SpatialMetaphor::make(std::string(500, 'a')));
    EXPECT_EQ(SpatialMetaphor::make("  picnic  ").keyword(), "picnic");
}

TEST(Attributes, ParsesWellFormedObject)
{
    EXPECT_EQ(parse_attributes(object_text(sample())), sample());
}

TEST(Attributes, RecoversObjectWrappedInProse)
{
    const std::string raw = "Sure! Here it is:\n```json\n" + object_text(sample()) + "\n```\nHope that helps {smile}.";
    EXPECT_EQ(parse_attributes(raw), sample());
}

TEST(Attributes, MissingKey)
{
    auto j = nlohmann::json::parse(object_text(sample()));
    j.erase("ActorType");
    try {
        parse_attributes(j.dump());
        FAIL() << "expected MissingAttribute";
    } catch (const AttributeError& e) {
        EXPECT_EQ(e.code(), "MissingAttribute");
        EXPECT_EQ(e.subject(), "ActorType");
    }
}

TEST(Attributes, UnexpectedKey)
{
    auto j = nlohmann::json::parse(object_text(sample()));
    j["Mood"] = "sunny";
    try {
        parse_attributes(j.dump());
        FAIL() << "expected UnexpectedKey";
    } catch (const AttributeError& e) {
        EXPECT_EQ(e.code(), "UnexpectedKey");
        EXPECT_EQ(e.subject(), "Mood");
    }
}

TEST(Attributes, MalformedAndEmptyValues)
{
    EXPECT_THROW(parse_attributes("no object here"), AttributeError);
    auto j = nlohmann::json::parse(object_text(sample()));
    j["Atmosphere"] = "  ";
    EXPECT_THROW(parse_attributes(j.dump()), AttributeError);
}

TEST(Template, OpensWithAtmosphereAndFillsEverySlotOnce)
{
    const auto a = sample();
    const std::string t = render_template(a);
    EXPECT_TRUE(t.starts_with("In a space that feels cozy and intimate, people come together")) << t;
    EXPECT_EQ(t, render_template(a));
    for (const auto* f : attribute_fields(a)) {
        const auto first = t.find(*f);
        ASSERT_NE(first, std::string::npos) << *f;
        EXPECT_EQ(t.find(*f, first + 1), std::string::npos) << *f;
    }
}

TEST(Attributes, RoundTrip)
{
    const auto a = sample();
    EXPECT_EQ(parse_attributes(to_json(a).dump()), a);
    const auto keys = to_json(a);
    std::size_t i = 0;
    for (auto it = keys.begin(); it != keys.end(); ++it, ++i) {
        EXPECT_EQ(it.key(), kAttributeKeys[i]);
    }
}
