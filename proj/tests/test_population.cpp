#include <gtest/gtest.h>

#include <set>

#include "metaspace/errors.hpp"
#include "metaspace/population.hpp"
#include "support.hpp"

using namespace metaspace;
using metaspace::fixtures::ScriptedProvider;

namespace {

const MetaphorAttributes kAttrs{"bright and busy", "around food stalls", "by wandering between stalls", "evenings",
                                "quick banter", "vendors and visitors", "snacks and stories", "anyone may drop by"};

nlohmann::json valid_profile(const std::string& name)
{
    return {{"id_name", "ID_" + name},
            {"user_name", name},
            {"email", name + "@example.com"},
            {"password", "pw"},
            {"user_bio", "bio of " + name},
            {"profile_picture", "pic.png"},
            {"posting_trait", 0.5},
            {"commenting_trait", 0.7},
            {"reacting_trait", 0.6},
            {"messaging_trait", 0.9},
            {"updating_trait", 0.2},
            {"comm_trait", 0.4},
            {"notification_trait", 0.1},
            {"interests", {"Music", "Food", "Travel"}},
            {"persona_name", "P " + name},
            {"social_group_name", "G"}};
}

AgentRequest request()
{
    AgentRequest r;
    r.role = Role::Networker;
    r.attrs = &kAttrs;
    r.keyword = "night market";
    return r;
}

std::string schema_field(const std::string& reply)
{
    auto provider = std::make_shared<ScriptedProvider>(std::deque<std::string>(kAgentAttempts, reply));
    Gateway g(provider);
    try {
        generate_agent(g, request(), 1);
    } catch (const ProfileError& e) {
        EXPECT_EQ(e.code(), "SchemaViolation");
        return e.subject();
    }
    return "accepted";
}

} // namespace

TEST(Agent, AcceptsWellFormedResponse)
{
    auto provider = std::make_shared<ScriptedProvider>(std::deque<std::string>{valid_profile("mika").dump()});
    Gateway g(provider);
    const auto p = generate_agent(g, request(), 1);
    EXPECT_EQ(p.user_name, "mika");
    EXPECT_EQ(p.role, Role::Networker);
    EXPECT_DOUBLE_EQ(p.traits.messaging, 0.9);
}

TEST(Agent, SchemaViolations)
{
    auto bad_trait = valid_profile("a");
    bad_trait["posting_trait"] = 1.2;
    EXPECT_EQ(schema_field(bad_trait.dump()), "posting_trait");

    auto low_comment = valid_profile("a");
    low_comment["commenting_trait"] = 0.3;
    EXPECT_EQ(schema_field(low_comment.dump()), "commenting_trait");

    auto few = valid_profile("a");
    few["interests"] = {"Music", "Art & Design"};
    EXPECT_EQ(schema_field(few.dump()), "interests");

    auto unknown = valid_profile("a");
    unknown["interests"] = {"Music", "Art & Design", "Knitting"};
    EXPECT_EQ(schema_field(unknown.dump()), "interests");

    auto no_prefix = valid_profile("a");
    no_prefix["id_name"] = "mika";
    EXPECT_EQ(schema_field(no_prefix.dump()), "id_name");
}

TEST(Agent, RetriesPastDuplicates)
{
    auto provider = std::make_shared<ScriptedProvider>(
        std::deque<std::string>{valid_profile("taken").dump(), valid_profile("fresh").dump()});
    Gateway g(provider);
    auto r = request();
    r.existing_names = {"taken"};
    EXPECT_EQ(generate_agent(g, r, 1).user_name, "fresh");
    EXPECT_EQ(provider->calls(), 2);
}

TEST(Agent, DuplicatesExhaustAttempts)
{
    auto provider = std::make_shared<ScriptedProvider>(
        std::deque<std::string>(kAgentAttempts, valid_profile("taken").dump()));
    Gateway g(provider);
    auto r = request();
    r.existing_names = {"taken"};
    try {
        generate_agent(g, r, 1);
        FAIL();
    } catch (const ProfileError& e) {
        EXPECT_EQ(e.code(), "UniquenessExhausted");
    }
}

TEST(Roles, Coverage)
{
    const auto nine = assign_roles(9, 4);
    EXPECT_EQ(std::set<Role>(nine.begin(), nine.end()).size(), kRoleCount);
    EXPECT_EQ(assign_roles(5, 4).size(), 5u);
    EXPECT_EQ(assign_roles(30, 11), assign_roles(30, 11));
    for (int n : {9, 10, 40, 100}) {
        const auto r = assign_roles(n, static_cast<std::uint64_t>(n));
        EXPECT_EQ(std::set<Role>(r.begin(), r.end()).size(), kRoleCount) << n;
    }
    for (std::size_t i = 0; i < kRoleCount; ++i) {
        const auto role = static_cast<Role>(i);
        EXPECT_EQ(parse_role(role_name(role)), role);
        EXPECT_FALSE(role_goal(role).empty());
    }
}

TEST(Roster, StubRosterIsValidAndUnique)
{
    PlatformConfig c;
    c.user_count = 24;
    Gateway g(std::make_shared<StubProvider>());
    const auto roster = generate_roster(g, kAttrs, "night market", c, 3, 4);
    ASSERT_EQ(roster.size(), 24u);
    std::set<std::string> names, ids, bios;
    std::set<Role> roles;
    for (const auto& a : roster) {
        EXPECT_FALSE(trait_violation(a.traits).has_value());
        EXPECT_GE(a.interests.size(), 3u);
        for (const auto& i : a.interests) {
            EXPECT_TRUE(interest_index(i).has_value()) << i;
        }
        EXPECT_TRUE(a.id_name.starts_with("ID_"));
        names.insert(a.user_name);
        ids.insert(a.id_name);
        bios.insert(a.user_bio);
        roles.insert(a.role);
    }
    EXPECT_EQ(names.size(), 24u);
    EXPECT_EQ(ids.size(), 24u);
    EXPECT_EQ(bios.size(), 24u);
    EXPECT_EQ(roles.size(), kRoleCount);
    EXPECT_EQ(roster, generate_roster(g, kAttrs, "night market", c, 3, 1));
}

TEST(Roster, ProfileJsonRoundTrip)
{
    PlatformConfig c;
    c.user_count = 5;
    Gateway g(std::make_shared<StubProvider>());
    for (const auto& a : generate_roster(g, kAttrs, "x", c, 8)) {
        EXPECT_EQ(profile_from_json(nlohmann::json::parse(to_json(a).dump())), a);
    }
}

TEST(Graph, Structure)
{
    double degree_sum = 0.0;
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto g = build_graph(20, GraphParams{8.0, 0.3}, s);
        EXPECT_EQ(g.size, 20u);
        for (const auto& [a, b] : g.follows) {
            EXPECT_NE(a, b);
            EXPECT_LT(a, 20u);
            EXPECT_LT(b, 20u);
        }
        for (const auto& [a, b] : g.friends) {
            EXPECT_LT(a, b);
            EXPECT_TRUE(g.are_friends(b, a));
            const auto c = g.closeness_of(a, b);
            ASSERT_TRUE(c.has_value());
            EXPECT_GE(*c, kFriendClosenessMin);
            EXPECT_LE(*c, 10);
        }
        degree_sum += static_cast<double>(g.follows.size()) / 20.0;
        EXPECT_EQ(g, build_graph(20, GraphParams{8.0, 0.3}, s));
    }
    const double mean = degree_sum / 50.0;
    EXPECT_GE(mean, 6.0);
    EXPECT_LE(mean, 10.0);
}

TEST(Graph, SmallPopulationCapsDegree)
{
    const auto g = build_graph(5, GraphParams{8.0, 1.0}, 2);
    EXPECT_LE(g.follows.size(), 20u);
}

TEST(Recommend, JaccardOrdering)
{
    std::vector<AgentProfile> p(4);
    p[0].interests = {"Music", "Art & Design", "Travel"};
    p[1].interests = {"Music", "Art & Design", "Food"};
    p[2].interests = {"Food", "Gaming", "Finance"};
    p[3].interests = {"Music", "Art & Design", "Travel"};
    SocialGraph g;
    g.size = 4;
    auto r = recommend_users(0, g, p);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_EQ(r[0], 3u);
    EXPECT_EQ(r[1], 1u);
    EXPECT_EQ(r[2], 2u);

    g.friends.insert({0, 3});
    r = recommend_users(0, g, p);
    EXPECT_EQ(r, (std::vector<ActorId>{1, 2}));

    std::vector<AgentProfile> lonely(3);
    lonely[0].interests = {"Sports", "Religion", "Animals"};
    lonely[1].interests = {"Music", "Food", "Travel"};
    lonely[2].interests = {"Gaming", "Finance", "Fashion"};
    SocialGraph g3;
    g3.size = 3;
    EXPECT_EQ(recommend_users(0, g3, lonely), (std::vector<ActorId>{1, 2}));
}
