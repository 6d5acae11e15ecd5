#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "metaspace/metaphor.hpp"
#include "metaspace/population.hpp"
#include "metaspace/taxonomy.hpp"

namespace metaspace {

using PostId = std::uint32_t;
using CommentId = std::uint32_t;
using ChatId = std::uint32_t;
using MessageId = std::uint32_t;
using ChannelId = std::uint32_t;

/// The actor of events no member performed (genesis).
inline constexpr ActorId kSystemActor = 0xFFFFFFFFu;

/// The 18 actions (same order and values as ActionKind) followed by the
/// bookkeeping kinds that only the pipeline or a human can produce.
enum class EventKind : std::uint8_t {
    AddPost,
    AddChannelPost,
    AddEphemeralContent,
    AddCommentOnPost,
    AddCommentOnComment,
    React,
    StartNewChat,
    StartNewGroupChat,
    SendMessage1to1,
    SendMessageGroup,
    CreateChannel,
    JoinChannel,
    ReadUnreadMessages,
    SendFriendRequest,
    AcceptFriendRequest,
    UpdateRelation,
    UpdateRestriction,
    UpdatePostVisibility,
    Genesis,
    RegisterParticipant,
    EditPost,
    DeletePost,
};
inline constexpr std::size_t kEventKindCount = 22;

constexpr EventKind to_event(ActionKind k) { return static_cast<EventKind>(k); }
std::optional<ActionKind> as_action(EventKind k);
std::string_view event_kind_name(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct GenesisPayload
{
    std::string keyword;
    MetaphorAttributes attrs;
    PlatformConfig config;
    std::string rationale;
    std::vector<AgentProfile> roster;
    SocialGraph graph;
    std::uint64_t seed = 0;
    int minutes_per_tick = 5;

    bool operator==(const GenesisPayload&) const = default;
};

struct PostPayload
{
    PostId id = 0;
    std::string text;
    std::optional<ChannelId> channel;
    bool ephemeral = false;

    bool operator==(const PostPayload&) const = default;
};

struct CommentPayload
{
    CommentId id = 0;
    PostId post = 0;
    std::optional<CommentId> parent;
    std::string text;

    bool operator==(const CommentPayload&) const = default;
};

struct ReactPayload
{
    PostId post = 0;
    std::string token;

    bool operator==(const ReactPayload&) const = default;
};

struct StartChatPayload
{
    ChatId id = 0;
    std::vector<ActorId> participants; ///< includes the actor
    std::map<ActorPair, int> closeness; ///< every unordered participant pair
    MessageId message = 0;
    std::string text;
    bool off_topic = false;

    bool operator==(const StartChatPayload&) const = default;
};

struct MessagePayload
{
    ChatId chat = 0;
    MessageId id = 0;
    std::string text;
    bool off_topic = false;

    bool operator==(const MessagePayload&) const = default;
};

struct CreateChannelPayload
{
    ChannelId id = 0;
    std::string name;
    std::string bio;

    bool operator==(const CreateChannelPayload&) const = default;
};

struct JoinChannelPayload
{
    ChannelId channel = 0;

    bool operator==(const JoinChannelPayload&) const = default;
};

struct ReadPayload
{
    std::vector<ChatId> chats;

    bool operator==(const ReadPayload&) const = default;
};

struct FriendRequestPayload
{
    ActorId target = 0;

    bool operator==(const FriendRequestPayload&) const = default;
};

struct AcceptFriendPayload
{
    ActorId requester = 0;
    int closeness = kFriendClosenessMin;

    bool operator==(const AcceptFriendPayload&) const = default;
};

enum class RelationChange : std::uint8_t { Follow, Unfollow, Unfriend };

struct RelationPayload
{
    ActorId target = 0;
    RelationChange change = RelationChange::Follow;

    bool operator==(const RelationPayload&) const = default;
};

struct RestrictionPayload
{
    ActorId target = 0;
    NetworkingControl control = NetworkingControl::Block;
    bool active = true;

    bool operator==(const RestrictionPayload&) const = default;
};

struct VisibilityPayload
{
    PostId post = 0;
    Visibility visibility = Visibility::Public;

    bool operator==(const VisibilityPayload&) const = default;
};

struct RegisterPayload
{
    ActorId id = 0;
    std::string id_name;
    std::string user_name;
    int closeness = 5;

    bool operator==(const RegisterPayload&) const = default;
};

struct EditPostPayload
{
    PostId post = 0;
    std::string text;

    bool operator==(const EditPostPayload&) const = default;
};

struct DeletePostPayload
{
    PostId post = 0;

    bool operator==(const DeletePostPayload&) const = default;
};

using Payload = std::variant<GenesisPayload, PostPayload, CommentPayload, ReactPayload, StartChatPayload,
                             MessagePayload, CreateChannelPayload, JoinChannelPayload, ReadPayload,
                             FriendRequestPayload, AcceptFriendPayload, RelationPayload, RestrictionPayload,
                             VisibilityPayload, RegisterPayload, EditPostPayload, DeletePostPayload>;

/// Variant index a payload of `kind` must hold.
std::size_t payload_index(EventKind kind);

struct SimEvent
{
    std::uint64_t tick = 0;
    std::uint64_t seq = 0;
    ActorId actor = kSystemActor;
    EventKind kind = EventKind::Genesis;
    Payload payload;

    bool operator==(const SimEvent&) const = default;
};

nlohmann::ordered_json to_json(const SocialGraph& graph);
SocialGraph graph_from_json(const nlohmann::json& j);

nlohmann::ordered_json payload_to_json(const Payload& payload);

/// Ids the engine assigns (new post, comment, chat, message and channel ids)
/// default to 0 when absent, so human commands can omit them.
Payload payload_from_json(EventKind kind, const nlohmann::json& j);

/// Keys in order: tick, seq, actor, kind, payload. The system actor is null.
nlohmann::ordered_json to_json(const SimEvent& event);
SimEvent event_from_json(const nlohmann::json& j);

std::string to_line(const SimEvent& event);
SimEvent parse_line(std::string_view line);

void write_log(std::ostream& out, const std::vector<SimEvent>& events);

/// Throws PersistenceError("MalformedLog") with the line number on bad input.
std::vector<SimEvent> read_log(std::istream& in);

} // namespace metaspace
