#include <gtest/gtest.h>

#include <sstream>

#include "metaspace/audit.hpp"
#include "metaspace/engine.hpp"
#include "metaspace/errors.hpp"
#include "support.hpp"

using namespace metaspace;

namespace {

AgentProfile agent_with(Traits t)
{
    AgentProfile a;
    a.traits = t;
    return a;
}

std::string log_text(const std::vector<SimEvent>& log)
{
    std::ostringstream os;
    write_log(os, log);
    return os.str();
}

} // namespace

TEST(Activity, LevelIsTraitMean)
{
    const Traits minimum{0.0, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0};
    EXPECT_NEAR(activity_level(agent_with(minimum)), 1.5 / 7.0, 1e-12);
    const Traits all{1, 1, 1, 1, 1, 1, 1};
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_TRUE(activity_gate(agent_with(all), rng));
    }
}

TEST(Activity, GateFrequencyMatchesLevel)
{
    Rng rng(3);
    const ActivityPolicy fixed = [](const AgentProfile&) { return 0.3; };
    int active = 0;
    for (int i = 0; i < 10000; ++i) {
        active += activity_gate(AgentProfile{}, rng, fixed) ? 1 : 0;
    }
    EXPECT_NEAR(active / 10000.0, 0.30, 0.02);
}

TEST(Sampling, Examples)
{
    Rng rng(5);
    Traits t;
    t.posting = 0.6;
    t.reacting = 0.6;
    EXPECT_EQ(sample_action(ActionSet{ActionKind::AddPost}, t, rng), ActionKind::AddPost);

    Traits zero;
    zero.posting = 0.0;
    EXPECT_FALSE(sample_action(ActionSet{ActionKind::AddPost, ActionKind::AddEphemeralContent}, zero, rng).has_value());
    EXPECT_FALSE(sample_action(ActionSet{}, t, rng).has_value());

    int posts = 0;
    for (int i = 0; i < 10000; ++i) {
        posts += sample_action(ActionSet{ActionKind::AddPost, ActionKind::React}, t, rng) == ActionKind::AddPost;
    }
    EXPECT_NEAR(posts / 10000.0, 0.5, 0.03);
}

TEST(Sampling, GoverningTraits)
{
    Traits t{0.1, 0.6, 0.7, 0.8, 0.2, 0.3, 0.4};
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::AddPost, t), 0.1);
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::AddCommentOnPost, t), 0.6);
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::React, t), 0.7);
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::SendMessage1to1, t), 0.8);
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::SendFriendRequest, t), 0.2);
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::CreateChannel, t), 0.3);
    EXPECT_DOUBLE_EQ(governing_trait(ActionKind::ReadUnreadMessages, t), 0.4);
}

TEST(StateFeasibility, LastSenderCannotMessage)
{
    auto c = fixtures::base_config(5);
    c.graph.follow_degree = 0.0;
    World w = fixtures::world_from(fixtures::make_genesis(c));
    w.apply(fixtures::next_event(w, 1, 0, EventKind::StartNewChat,
                                StartChatPayload{0, {0, 1}, {{{0, 1}, 3}}, 0, "hi there", false}));
    auto f = state_feasible(w, 0, 1);
    EXPECT_FALSE(f.contains(ActionKind::SendMessage1to1));
    EXPECT_TRUE(state_feasible(w, 1, 1).contains(ActionKind::SendMessage1to1));
    EXPECT_FALSE(f.contains(ActionKind::ReadUnreadMessages));
    EXPECT_TRUE(state_feasible(w, 1, 1).contains(ActionKind::ReadUnreadMessages));
    EXPECT_FALSE(f.contains(ActionKind::AddCommentOnPost)); // nothing to comment on yet
}

TEST(Engine, NeedsGenesis)
{
    Gateway g(std::make_shared<StubProvider>());
    EXPECT_THROW(Engine(std::span<const SimEvent>{}, g, {}), EngineError);
}

TEST(Engine, ZeroTicksEmitNothing)
{
    Gateway g(std::make_shared<StubProvider>());
    const auto genesis = fixtures::make_genesis(fixtures::base_config(6));
    Engine e(std::span<const SimEvent>(&genesis, 1), g, {});
    EXPECT_TRUE(e.run(0).empty());
    EXPECT_EQ(e.log().size(), 1u);
}

TEST(Engine, DeterministicAndReplayable)
{
    const auto genesis = fixtures::make_genesis(fixtures::base_config(10), 21);
    auto run = [&](std::uint64_t seed) {
        Gateway g(std::make_shared<StubProvider>());
        EngineOptions o;
        o.master_seed = seed;
        Engine e(std::span<const SimEvent>(&genesis, 1), g, o);
        e.run(120);
        EXPECT_EQ(restore(e.log()), e.world());
        return e.log();
    };
    const auto a = run(9);
    const auto b = run(9);
    EXPECT_EQ(log_text(a), log_text(b));
    EXPECT_NE(log_text(a), log_text(run(10)));
    EXPECT_GT(a.size(), 100u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].seq, i);
    }
}

TEST(Engine, ResumesFromLog)
{
    const auto genesis = fixtures::make_genesis(fixtures::base_config(8), 2);
    Gateway g(std::make_shared<StubProvider>());
    EngineOptions o;
    o.master_seed = 4;
    Engine full(std::span<const SimEvent>(&genesis, 1), g, o);
    full.run(60);
    Engine first(std::span<const SimEvent>(&genesis, 1), g, o);
    first.run(30);
    Engine second(first.log(), g, o);
    second.run(30);
    EXPECT_EQ(log_text(second.log()), log_text(full.log()));
}

TEST(Engine, ProducesCleanLogs)
{
    Rng rng(31);
    for (int i = 0; i < 4; ++i) {
        const auto genesis = fixtures::make_genesis(fixtures::random_config(rng, 12), static_cast<std::uint64_t>(i));
        Gateway g(std::make_shared<StubProvider>());
        EngineOptions o;
        o.master_seed = static_cast<std::uint64_t>(i);
        Engine e(std::span<const SimEvent>(&genesis, 1), g, o);
        e.run(150);
        const auto report = audit_log(e.log());
        EXPECT_TRUE(report.clean()) << to_json(report).dump(2);
    }
}

TEST(Engine, GroupSpacesCreateDistinctChannels)
{
    auto c = fixtures::base_config(20);
    c.connection_type = ConnectionType::GroupBased;
    const auto genesis = fixtures::make_genesis(c, 6);
    Gateway g(std::make_shared<StubProvider>());
    Engine e(std::span<const SimEvent>(&genesis, 1), g, {});
    e.run(200);
    EXPECT_GT(e.world().channels().size(), 1u);
    const auto names = e.world().channel_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::vector<std::string> others(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(i));
        EXPECT_TRUE(channel_name_is_distinct(names[i], others)) << names[i];
    }
    EXPECT_GT(e.world().posts().size(), 0u);
}

TEST(Engine, HumanCommands)
{
    const auto genesis = fixtures::make_genesis(fixtures::base_config(6), 3);
    Gateway g(std::make_shared<StubProvider>());
    Engine e(std::span<const SimEvent>(&genesis, 1), g, {});
    std::vector<SimEvent> seen;
    e.set_sink([&](const SimEvent& ev) { seen.push_back(ev); });

    auto post = e.submit({"visitor", EventKind::AddPost, PostPayload{0, "hello from a human", std::nullopt, false}});
    auto bad = e.submit({"visitor", EventKind::React, ReactPayload{999, "like"}});
    auto genesis_cmd = e.submit({"visitor", EventKind::Genesis, GenesisPayload{}});
    auto agent_id =
        e.submit({e.world().roster()[0].id_name, EventKind::AddPost, PostPayload{0, "impostor", std::nullopt, false}});
    e.step();

    const SimEvent applied = post.get();
    EXPECT_EQ(applied.kind, EventKind::AddPost);
    EXPECT_TRUE(e.world().is_human(applied.actor));
    EXPECT_EQ(e.world().posts()[std::get<PostPayload>(applied.payload).id].text, "hello from a human");
    EXPECT_THROW(bad.get(), WorldError);
    EXPECT_THROW(genesis_cmd.get(), EngineError);
    EXPECT_THROW(agent_id.get(), EngineError);
    ASSERT_GE(seen.size(), 2u);
    EXPECT_EQ(seen[0].kind, EventKind::RegisterParticipant);
    EXPECT_EQ(seen[1], applied);

    auto chat = e.submit({"visitor", EventKind::StartNewChat, StartChatPayload{0, {1}, {}, 0, "hey agent", false}});
    e.step();
    const auto ev = chat.get();
    const auto& s = std::get<StartChatPayload>(ev.payload);
    EXPECT_EQ(s.participants.size(), 2u);
    EXPECT_EQ(s.closeness.size(), 1u);
}

TEST(Engine, SnapshotsArePublishedPerTick)
{
    const auto genesis = fixtures::make_genesis(fixtures::base_config(6), 3);
    Gateway g(std::make_shared<StubProvider>());
    EngineOptions o;
    o.publish_snapshots = true;
    Engine e(std::span<const SimEvent>(&genesis, 1), g, o);
    auto before = e.snapshot();
    e.run(5);
    auto after = e.snapshot();
    ASSERT_TRUE(before && after);
    EXPECT_NE(before, after);
    EXPECT_EQ(*after, e.world());
    EXPECT_EQ(before->next_seq(), 1u);
}

TEST(Engine, OffTopicRateIsRoughlyTenPercent)
{
    const auto genesis = fixtures::make_genesis(fixtures::base_config(20), 12);
    Gateway g(std::make_shared<StubProvider>());
    Engine e(std::span<const SimEvent>(&genesis, 1), g, {});
    e.run(300);
    const auto r = audit_log(e.log());
    ASSERT_GT(r.agent_messages, 500u);
    EXPECT_NEAR(r.off_topic_rate(), 0.10, 0.04);
}
