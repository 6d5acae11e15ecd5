#include <gtest/gtest.h>

#include "metaspace/errors.hpp"
#include "metaspace/world.hpp"
#include "support.hpp"

using namespace metaspace;
using metaspace::fixtures::next_event;

namespace {

PlatformConfig isolated_config()
{
    auto c = fixtures::base_config(6);
    c.graph.follow_degree = 0.0;
    c.graph.friend_promotion = 0.0;
    return c;
}

class WorldTest : public ::testing::Test
{
protected:
    void init(const PlatformConfig& c, int minutes_per_tick = 5)
    {
        m_world = World{};
        m_world.apply(fixtures::make_genesis(c, 5, "a lantern-lit night market", minutes_per_tick));
    }
    void SetUp() override { init(isolated_config()); }

    SimEvent ev(std::uint64_t tick, ActorId actor, EventKind kind, Payload p)
    {
        return next_event(m_world, tick, actor, kind, std::move(p));
    }
    void apply(std::uint64_t tick, ActorId actor, EventKind kind, Payload p)
    {
        m_world.apply(ev(tick, actor, kind, std::move(p)));
    }
    void reject(std::uint64_t tick, ActorId actor, EventKind kind, Payload p)
    {
        const World before = m_world;
        EXPECT_THROW(m_world.apply(ev(tick, actor, kind, std::move(p))), WorldError);
        EXPECT_EQ(m_world, before);
    }
    PostId post(ActorId author, std::uint64_t tick = 1, bool ephemeral = false)
    {
        const auto id = static_cast<PostId>(m_world.posts().size());
        apply(tick, author, ephemeral ? EventKind::AddEphemeralContent : EventKind::AddPost,
              PostPayload{id, "post by " + std::to_string(author) + " at " + std::to_string(tick), std::nullopt,
                          ephemeral});
        return id;
    }
    std::map<ActorPair, int> closeness(std::vector<ActorId> ids, int v = 3)
    {
        std::map<ActorPair, int> out;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                out[unordered(ids[i], ids[j])] = v;
            }
        }
        return out;
    }

    World m_world;
};

} // namespace

TEST_F(WorldTest, GenesisMustComeFirstAndOnce)
{
    World w;
    EXPECT_THROW(w.apply(SimEvent{0, 0, 0, EventKind::AddPost, PostPayload{0, "x"}}), WorldError);
    EXPECT_THROW(m_world.apply(fixtures::make_genesis(isolated_config())), WorldError);
    EXPECT_EQ(m_world.agent_count(), 6u);
    EXPECT_EQ(m_world.members().size(), 6u);
}

TEST_F(WorldTest, SequenceAndTickMustAdvance)
{
    post(0, 3);
    EXPECT_THROW(m_world.apply(SimEvent{2, m_world.next_seq(), 0, EventKind::AddPost, PostPayload{1, "late"}}),
                 WorldError);
    EXPECT_THROW(m_world.apply(SimEvent{3, m_world.next_seq() + 1, 0, EventKind::AddPost, PostPayload{1, "gap"}}),
                 WorldError);
}

TEST_F(WorldTest, PostRules)
{
    EXPECT_EQ(post(0), 0u);
    reject(1, 0, EventKind::AddPost, PostPayload{5, "wrong id"});
    reject(1, 0, EventKind::AddPost, PostPayload{1, "   "});
    reject(1, 0, EventKind::AddPost, PostPayload{1, "flag mismatch", std::nullopt, true});
    reject(1, 0, EventKind::AddChannelPost, PostPayload{1, "no channels here", 0u});
    reject(1, 99, EventKind::AddPost, PostPayload{1, "stranger"});
}

TEST_F(WorldTest, PublicAndPrivateVisibility)
{
    const PostId p = post(0);
    for (ActorId v = 0; v < 6; ++v) {
        EXPECT_TRUE(m_world.can_see(v, m_world.posts()[p], 1));
    }
    apply(2, 0, EventKind::UpdatePostVisibility, VisibilityPayload{p, Visibility::Private});
    EXPECT_EQ(m_world.posts()[p].visibility, Visibility::Private);
    EXPECT_TRUE(m_world.can_see(0, m_world.posts()[p], 2));
    ASSERT_FALSE(m_world.connected(0, 1));
    EXPECT_FALSE(m_world.can_see(1, m_world.posts()[p], 2));
    reject(2, 1, EventKind::UpdatePostVisibility, VisibilityPayload{p, Visibility::Public});
    reject(2, 0, EventKind::UpdatePostVisibility, VisibilityPayload{p, Visibility::Private});
    apply(3, 1, EventKind::UpdateRelation, RelationPayload{0, RelationChange::Follow});
    EXPECT_TRUE(m_world.can_see(1, m_world.posts()[p], 3));
    apply(4, 0, EventKind::UpdatePostVisibility, VisibilityPayload{p, Visibility::Public});
    EXPECT_EQ(m_world.posts()[p].visibility, Visibility::Public);
}

TEST_F(WorldTest, EphemeralExpiresAfterOneDay)
{
    const PostId p = post(2, 10, true);
    const auto& pp = m_world.posts()[p];
    EXPECT_EQ(m_world.ephemeral_ticks(), 288u);
    EXPECT_TRUE(m_world.can_see(3, pp, 10 + 288));
    EXPECT_FALSE(m_world.can_see(3, pp, 10 + 289));
    EXPECT_FALSE(m_world.can_see(2, pp, 10 + 289));
    EXPECT_EQ(expired_ephemeral(m_world, 10 + 289), std::vector<PostId>{p});
    EXPECT_TRUE(expired_ephemeral(m_world, 10 + 288).empty());
    const PostId q = post(2, 11);
    EXPECT_TRUE(m_world.can_see(3, m_world.posts()[q], 1'000'000));
}

TEST_F(WorldTest, EphemeralAtMinuteCadence)
{
    init(isolated_config(), 1);
    const PostId p = post(1, 0, true);
    EXPECT_TRUE(m_world.can_see(2, m_world.posts()[p], 23 * 60 + 59));
    EXPECT_FALSE(m_world.can_see(2, m_world.posts()[p], 24 * 60 + 1));
}

TEST_F(WorldTest, EphemeralDisabledRejects)
{
    auto c = isolated_config();
    c.ephemeral_enabled = false;
    init(c);
    reject(1, 0, EventKind::AddEphemeralContent, PostPayload{0, "story", std::nullopt, true});
}

TEST_F(WorldTest, Comments)
{
    const PostId p = post(0);
    apply(2, 1, EventKind::AddCommentOnPost, CommentPayload{0, p, std::nullopt, "nice"});
    apply(2, 2, EventKind::AddCommentOnComment, CommentPayload{1, p, 0u, "agreed"});
    EXPECT_EQ(m_world.posts()[p].comment_count, 2u);
    EXPECT_EQ(m_world.comment_history(p), (std::vector<std::string>{"nice", "agreed"}));
    reject(2, 2, EventKind::AddCommentOnComment, CommentPayload{2, p, 7u, "bad parent"});
    reject(2, 2, EventKind::AddCommentOnPost, CommentPayload{2, 9, std::nullopt, "no post"});
}

TEST_F(WorldTest, FlatThreadsRejectReplies)
{
    auto c = isolated_config();
    c.commenting = Commenting::FlatThreads;
    init(c);
    const PostId p = post(0);
    apply(2, 1, EventKind::AddCommentOnPost, CommentPayload{0, p, std::nullopt, "nice"});
    try {
        m_world.apply(ev(2, 2, EventKind::AddCommentOnComment, CommentPayload{1, p, 0u, "nested"}));
        FAIL();
    } catch (const WorldError& e) {
        EXPECT_EQ(e.code(), "InvariantViolation");
    }
}

TEST_F(WorldTest, ReactionDomain)
{
    auto c = isolated_config();
    c.reactions = Reactions::LikeOnly;
    init(c);
    const PostId p = post(0);
    try {
        m_world.apply(ev(2, 1, EventKind::React, ReactPayload{p, "down"}));
        FAIL();
    } catch (const WorldError& e) {
        EXPECT_EQ(e.code(), "InvariantViolation");
    }
    apply(2, 1, EventKind::React, ReactPayload{p, "like"});
    apply(3, 1, EventKind::React, ReactPayload{p, "like"});
    EXPECT_EQ(m_world.posts()[p].reaction_count, 1u);
}

TEST_F(WorldTest, ChatsAndUnread)
{
    apply(1, 0, EventKind::StartNewChat, StartChatPayload{0, {0, 2}, closeness({0, 2}), 0, "hi", false});
    EXPECT_EQ(m_world.unread_chats(2), std::vector<ChatId>{0});
    EXPECT_TRUE(m_world.unread_chats(0).empty());
    EXPECT_EQ(m_world.direct_chat(2, 0), 0u);
    // the agent that spoke last cannot speak again
    reject(2, 0, EventKind::SendMessage1to1, MessagePayload{0, 1, "again", false});
    apply(2, 2, EventKind::SendMessage1to1, MessagePayload{0, 1, "hello back", false});
    apply(3, 0, EventKind::ReadUnreadMessages, ReadPayload{{0}});
    EXPECT_TRUE(m_world.unread_chats(0).empty());
    // one direct chat per pair
    reject(4, 2, EventKind::StartNewChat, StartChatPayload{1, {0, 2}, closeness({0, 2}), 2, "dup", false});
    // actor must participate, closeness must cover pairs
    reject(4, 1, EventKind::StartNewChat, StartChatPayload{1, {0, 2}, closeness({0, 2}), 2, "x", false});
    reject(4, 1, EventKind::StartNewChat, StartChatPayload{1, {1, 3}, {}, 2, "x", false});
    reject(4, 1, EventKind::StartNewChat, StartChatPayload{1, {1, 3}, closeness({1, 3}, 9), 2, "x", false});
    apply(4, 1, EventKind::StartNewGroupChat, StartChatPayload{1, {1, 3, 4}, closeness({1, 3, 4}), 2, "all", false});
    EXPECT_TRUE(m_world.chats()[1].group);
    reject(5, 1, EventKind::StartNewGroupChat, StartChatPayload{2, {1, 3}, closeness({1, 3}), 3, "two", false});
}

TEST_F(WorldTest, AudienceWithConnection)
{
    auto c = isolated_config();
    c.messaging_audience = MessagingAudience::WithConnection;
    init(c);
    reject(1, 0, EventKind::StartNewChat, StartChatPayload{0, {0, 1}, closeness({0, 1}), 0, "hi", false});
    apply(1, 0, EventKind::UpdateRelation, RelationPayload{1, RelationChange::Follow});
    apply(2, 0, EventKind::StartNewChat, StartChatPayload{0, {0, 1}, closeness({0, 1}), 0, "hi", false});
}

TEST_F(WorldTest, FriendshipLifecycle)
{
    apply(1, 0, EventKind::SendFriendRequest, FriendRequestPayload{1});
    reject(1, 1, EventKind::SendFriendRequest, FriendRequestPayload{0});
    reject(1, 2, EventKind::AcceptFriendRequest, AcceptFriendPayload{0, 6});
    reject(1, 1, EventKind::AcceptFriendRequest, AcceptFriendPayload{0, 4});
    apply(1, 1, EventKind::AcceptFriendRequest, AcceptFriendPayload{0, 7});
    EXPECT_TRUE(m_world.graph().are_friends(0, 1));
    EXPECT_EQ(m_world.graph().closeness_of(0, 1), 7);
    EXPECT_TRUE(m_world.pending_requests().empty());
    apply(2, 1, EventKind::UpdateRelation, RelationPayload{0, RelationChange::Unfriend});
    EXPECT_FALSE(m_world.graph().are_friends(0, 1));
    reject(2, 1, EventKind::UpdateRelation, RelationPayload{0, RelationChange::Unfriend});
}

TEST_F(WorldTest, BlocksAndMutes)
{
    const PostId p = post(0);
    apply(2, 3, EventKind::UpdateRestriction, RestrictionPayload{0, NetworkingControl::Mute, true});
    EXPECT_FALSE(m_world.can_see(3, m_world.posts()[p], 2));
    EXPECT_TRUE(m_world.can_see(4, m_world.posts()[p], 2));
    reject(2, 3, EventKind::UpdateRestriction, RestrictionPayload{0, NetworkingControl::Mute, true});
    apply(3, 4, EventKind::UpdateRestriction, RestrictionPayload{0, NetworkingControl::Block, true});
    EXPECT_FALSE(m_world.can_see(4, m_world.posts()[p], 3));
    reject(3, 0, EventKind::StartNewChat, StartChatPayload{0, {0, 4}, closeness({0, 4}), 0, "hey", false});
    apply(4, 3, EventKind::UpdateRestriction, RestrictionPayload{0, NetworkingControl::Mute, false});
    EXPECT_TRUE(m_world.can_see(3, m_world.posts()[p], 4));
}

TEST_F(WorldTest, RestrictionsNeedConfig)
{
    auto c = isolated_config();
    c.networking_control = {NetworkingControl::Mute};
    init(c);
    reject(1, 0, EventKind::UpdateRestriction, RestrictionPayload{1, NetworkingControl::Block, true});
}

TEST_F(WorldTest, ChannelsUnderGroupSpaces)
{
    reject(1, 0, EventKind::CreateChannel, CreateChannelPayload{0, "Ember Hall", "warm"});
    auto c = isolated_config();
    c.connection_type = ConnectionType::GroupBased;
    init(c);
    apply(1, 0, EventKind::CreateChannel, CreateChannelPayload{0, "Ember Hall", "warm"});
    EXPECT_TRUE(m_world.channels()[0].members.contains(0));
    reject(1, 1, EventKind::CreateChannel, CreateChannelPayload{1, "Ember Halls", "close"});
    reject(1, 0, EventKind::JoinChannel, JoinChannelPayload{0});
    apply(2, 1, EventKind::JoinChannel, JoinChannelPayload{0});
    EXPECT_TRUE(m_world.shares_channel(0, 1));
    apply(2, 1, EventKind::AddChannelPost, PostPayload{0, "welcome", 0u, false});
    reject(2, 2, EventKind::AddChannelPost, PostPayload{1, "not a member", 0u, false});
    EXPECT_TRUE(m_world.can_see(0, m_world.posts()[0], 2));
    EXPECT_FALSE(m_world.can_see(2, m_world.posts()[0], 2));
}

TEST_F(WorldTest, InvitedOnlyNeedsConnection)
{
    auto c = isolated_config();
    c.privacy_setting = PrivacySetting::InvitedOnly;
    init(c);
    const PostId p = post(0);
    EXPECT_FALSE(m_world.can_see(1, m_world.posts()[p], 1));
    apply(2, 0, EventKind::UpdateRelation, RelationPayload{1, RelationChange::Follow});
    EXPECT_TRUE(m_world.can_see(1, m_world.posts()[p], 2));
}

TEST_F(WorldTest, RegisterEditAndDelete)
{
    const ActorId h = 6;
    m_world.apply(ev(1, h, EventKind::RegisterParticipant, RegisterPayload{h, "guest", "Guest", 5}));
    EXPECT_TRUE(m_world.is_human(h));
    EXPECT_EQ(m_world.graph().size, 7u);
    EXPECT_EQ(m_world.graph().closeness_of(h, 0), 5);
    EXPECT_EQ(m_world.find_member("guest"), h);
    EXPECT_THROW(m_world.apply(ev(1, 7, EventKind::RegisterParticipant, RegisterPayload{7, "guest", "Dup", 5})),
                 WorldError);
    const PostId p = post(h, 2);
    apply(3, h, EventKind::EditPost, EditPostPayload{p, "edited"});
    EXPECT_EQ(m_world.posts()[p].text, "edited");
    reject(3, 0, EventKind::EditPost, EditPostPayload{p, "not mine"});
    apply(4, h, EventKind::DeletePost, DeletePostPayload{p});
    EXPECT_FALSE(m_world.can_see(h, m_world.posts()[p], 4));
    EXPECT_TRUE(visible_posts(m_world, 0, 4).empty());
}

TEST_F(WorldTest, FeedOrdering)
{
    post(0, 1);
    post(1, 2);
    post(2, 3);
    auto feed = visible_posts(m_world, 3, 3);
    ASSERT_EQ(feed.size(), 3u);
    EXPECT_EQ(feed[0]->id, 2u);
    EXPECT_EQ(feed[2]->id, 0u);
    EXPECT_THROW(visible_posts(m_world, 42, 3), WorldError);
    EXPECT_EQ(recent_visible(m_world, 3, 3, 2).size(), 2u);
}

TEST_F(WorldTest, RestoreReproducesState)
{
    std::vector<SimEvent> log{fixtures::make_genesis(isolated_config(), 5)};
    World w;
    w.apply(log[0]);
    auto push = [&](std::uint64_t t, ActorId a, EventKind k, Payload p) {
        log.push_back(next_event(w, t, a, k, std::move(p)));
        w.apply(log.back());
    };
    push(1, 0, EventKind::AddPost, PostPayload{0, "a"});
    push(2, 1, EventKind::React, ReactPayload{0, "love"});
    push(3, 2, EventKind::StartNewChat, StartChatPayload{0, {1, 2}, {{{1, 2}, 4}}, 0, "yo", true});
    EXPECT_EQ(restore(log), w);
    EXPECT_EQ(restore(std::span<const SimEvent>{}), World{});
    EXPECT_EQ(restore(log).export_text(), w.export_text());
}
