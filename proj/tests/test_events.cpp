#include <gtest/gtest.h>

#include <sstream>

#include "metaspace/errors.hpp"
#include "metaspace/events.hpp"
#include "support.hpp"

using namespace metaspace;

TEST(EventKinds, NamesRoundTrip)
{
    for (std::size_t i = 0; i < kEventKindCount; ++i) {
        const auto k = static_cast<EventKind>(i);
        EXPECT_EQ(parse_event_kind(event_kind_name(k)), k);
    }
    EXPECT_FALSE(parse_event_kind("Teleport").has_value());
    for (auto a : all_actions()) {
        EXPECT_EQ(as_action(to_event(a)), a);
        EXPECT_EQ(event_kind_name(to_event(a)), action_name(a));
    }
    EXPECT_FALSE(as_action(EventKind::Genesis).has_value());
}

TEST(Events, EveryPayloadRoundTrips)
{
    std::vector<SimEvent> events;
    events.push_back(fixtures::make_genesis(fixtures::base_config(6), 4));
    auto add = [&](ActorId actor, EventKind kind, Payload p) {
        events.push_back(SimEvent{7, events.size(), actor, kind, std::move(p)});
    };
    add(1, EventKind::AddPost, PostPayload{0, "hello \"world\"\n", std::nullopt, false});
    add(1, EventKind::AddChannelPost, PostPayload{1, "in channel", 3u, false});
    add(2, EventKind::AddEphemeralContent, PostPayload{2, "gone soon", std::nullopt, true});
    add(2, EventKind::AddCommentOnComment, CommentPayload{4, 0, 2u, "reply"});
    add(3, EventKind::React, ReactPayload{0, "wow"});
    add(3, EventKind::StartNewGroupChat, StartChatPayload{1, {0, 3, 5}, {{{0, 3}, 2}, {{0, 5}, 7}, {{3, 5}, 1}}, 9, "hey", true});
    add(4, EventKind::SendMessageGroup, MessagePayload{1, 10, "sup", false});
    add(4, EventKind::CreateChannel, CreateChannelPayload{2, "Ember Hall", "warm talk"});
    add(4, EventKind::JoinChannel, JoinChannelPayload{2});
    add(4, EventKind::ReadUnreadMessages, ReadPayload{{1, 4}});
    add(5, EventKind::SendFriendRequest, FriendRequestPayload{2});
    add(2, EventKind::AcceptFriendRequest, AcceptFriendPayload{5, 8});
    add(2, EventKind::UpdateRelation, RelationPayload{1, RelationChange::Unfriend});
    add(2, EventKind::UpdateRestriction, RestrictionPayload{1, NetworkingControl::Mute, false});
    add(2, EventKind::UpdatePostVisibility, VisibilityPayload{2, Visibility::Private});
    add(6, EventKind::RegisterParticipant, RegisterPayload{6, "guest-1", "Guest", 5});
    add(6, EventKind::EditPost, EditPostPayload{1, "edited"});
    add(6, EventKind::DeletePost, DeletePostPayload{1});

    for (const auto& e : events) {
        EXPECT_EQ(parse_line(to_line(e)), e) << to_line(e).substr(0, 200);
        EXPECT_EQ(to_line(e).find('\n'), std::string::npos);
        EXPECT_EQ(payload_index(e.kind), e.payload.index());
    }
    std::stringstream ss;
    write_log(ss, events);
    EXPECT_EQ(read_log(ss), events);
}

TEST(Events, SystemActorIsNull)
{
    const auto g = fixtures::make_genesis(fixtures::base_config(5));
    EXPECT_TRUE(to_json(g)["actor"].is_null());
    const auto j = to_json(g);
    auto it = j.begin();
    EXPECT_EQ(it.key(), "tick");
}

TEST(Events, MalformedLogReportsLine)
{
    std::stringstream ss;
    ss << to_line(fixtures::make_genesis(fixtures::base_config(5))) << "\n{not json}\n";
    try {
        read_log(ss);
        FAIL();
    } catch (const PersistenceError& e) {
        EXPECT_EQ(e.code(), "MalformedLog");
        EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
    }
}

TEST(Events, HumanPayloadDefaults)
{
    const auto p = payload_from_json(EventKind::AddPost, nlohmann::json{{"text", "hi"}});
    EXPECT_EQ(std::get<PostPayload>(p).id, 0u);
    EXPECT_THROW(payload_from_json(EventKind::React, nlohmann::json{{"post", "x"}}), PersistenceError);
    EXPECT_THROW(payload_from_json(EventKind::UpdateRelation, nlohmann::json{{"target", 1}, {"change", "hug"}}),
                 PersistenceError);
}
