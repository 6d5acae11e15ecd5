#include <gtest/gtest.h>

#include "metaspace/audit.hpp"
#include "support.hpp"

using namespace metaspace;
using metaspace::fixtures::next_event;

TEST(Audit, FlagsSimilarAgentPosts)
{
    auto c = fixtures::base_config(5);
    std::vector<SimEvent> log{fixtures::make_genesis(c, 2)};
    World w = fixtures::world_from(log[0]);
    auto push = [&](std::uint64_t t, ActorId a, EventKind k, Payload p) {
        log.push_back(next_event(w, t, a, k, std::move(p)));
        w.apply(log.back());
    };
    push(1, 0, EventKind::AddPost, PostPayload{0, "lanterns over the river tonight"});
    push(2, 0, EventKind::AddPost, PostPayload{1, "lanterns over the river again"});
    push(3, 1, EventKind::AddPost, PostPayload{2, "lanterns over the river tonight"});
    push(4, 2, EventKind::AddCommentOnPost, CommentPayload{0, 0, std::nullopt, "so pretty"});
    push(5, 3, EventKind::AddCommentOnPost, CommentPayload{1, 0, std::nullopt, "so pretty indeed"});
    const auto r = audit_log(log);
    EXPECT_EQ(r.agent_posts, 3u);
    EXPECT_EQ(r.post_violations, 1u);
    EXPECT_EQ(r.comment_violations, 1u);
    EXPECT_FALSE(r.clean());
    EXPECT_EQ(to_json(r)["violations"]["post_similarity"], 1);
    EXPECT_EQ(audit_log(log, kernels::Exec::Serial).post_violations, 1u);
}

TEST(Audit, ReportsReplayFailure)
{
    std::vector<SimEvent> log{fixtures::make_genesis(fixtures::base_config(5)),
                              SimEvent{1, 5, 0, EventKind::AddPost, PostPayload{0, "gap"}}};
    const auto r = audit_log(log);
    ASSERT_TRUE(r.replay_error.has_value());
    EXPECT_FALSE(r.clean());
}

TEST(Audit, CountsHumansSeparately)
{
    std::vector<SimEvent> log{fixtures::make_genesis(fixtures::base_config(5))};
    World w = fixtures::world_from(log[0]);
    log.push_back(next_event(w, 1, 5, EventKind::RegisterParticipant, RegisterPayload{5, "me", "Me", 5}));
    w.apply(log.back());
    log.push_back(next_event(w, 1, 5, EventKind::AddPost, PostPayload{0, "hi"}));
    w.apply(log.back());
    log.push_back(next_event(w, 1, 5, EventKind::AddPost, PostPayload{1, "hi"}));
    const auto r = audit_log(log);
    EXPECT_EQ(r.human_events, 3u);
    EXPECT_EQ(r.agent_posts, 0u);
    EXPECT_TRUE(r.clean());
}
