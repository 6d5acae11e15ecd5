#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "metaspace/events.hpp"

namespace metaspace {

struct Member
{
    std::string id_name;
    std::string user_name;
    bool human = false;

    bool operator==(const Member&) const = default;
};

struct Post
{
    PostId id = 0;
    ActorId author = 0;
    std::string text;
    std::optional<ChannelId> channel;
    bool ephemeral = false;
    std::uint64_t created_tick = 0;
    Visibility visibility = Visibility::Public;
    bool deleted = false;
    std::uint32_t reaction_count = 0;
    std::uint32_t comment_count = 0;

    bool operator==(const Post&) const = default;
};

struct Comment
{
    CommentId id = 0;
    ActorId author = 0;
    PostId post = 0;
    std::optional<CommentId> parent;
    std::string text;
    std::uint64_t created_tick = 0;

    bool operator==(const Comment&) const = default;
};

struct Message
{
    MessageId id = 0;
    ChatId chat = 0;
    ActorId sender = 0;
    std::string text;
    std::uint64_t created_tick = 0;
    std::set<ActorId> read_by; ///< the sender reads on send
    bool off_topic = false;

    bool operator==(const Message&) const = default;
};

struct Chat
{
    ChatId id = 0;
    bool group = false;
    std::vector<ActorId> participants; ///< ascending
    std::map<ActorPair, int> closeness;
    std::vector<MessageId> messages;

    bool operator==(const Chat&) const = default;
};

struct Channel
{
    ChannelId id = 0;
    std::string name;
    std::string bio;
    ActorId creator = 0;
    std::set<ActorId> members;
    std::uint64_t created_tick = 0;

    bool operator==(const Channel&) const = default;
};

inline constexpr int kMinutesPerDay = 24 * 60;

/// Domain state folded from the event log. `apply` is the only mutator and
/// is used both live and for replay, so replaying a log reproduces the
/// world exactly. Every invariant breach throws WorldError
/// ("InvariantViolation", field) and leaves the world unchanged.
class World
{
public:
    World() = default;

    void apply(const SimEvent& event);

    /// Runs the checks of `apply` without mutating.
    void check(const SimEvent& event) const;

    bool started() const noexcept { return m_started; }
    std::uint64_t tick() const noexcept { return m_tick; }
    std::uint64_t next_seq() const noexcept { return m_next_seq; }

    const GenesisPayload& genesis() const noexcept { return m_genesis; }
    const PlatformConfig& config() const noexcept { return m_genesis.config; }
    const ActionSet& feasible() const noexcept { return m_feasible; }
    const std::vector<AgentProfile>& roster() const noexcept { return m_genesis.roster; }
    std::size_t agent_count() const noexcept { return m_genesis.roster.size(); }
    const std::vector<Member>& members() const noexcept { return m_members; }
    bool is_member(ActorId a) const noexcept { return a < m_members.size(); }
    bool is_human(ActorId a) const { return is_member(a) && m_members[a].human; }
    std::optional<ActorId> find_member(std::string_view id_name) const;

    const SocialGraph& graph() const noexcept { return m_graph; }
    const std::set<ActorPair>& pending_requests() const noexcept { return m_pending; } ///< (requester, target)
    const std::set<ActorPair>& blocks() const noexcept { return m_blocks; } ///< (blocker, blocked)
    const std::set<ActorPair>& mutes() const noexcept { return m_mutes; } ///< (muter, muted)

    const std::vector<Post>& posts() const noexcept { return m_posts; }
    const std::vector<Comment>& comments() const noexcept { return m_comments; }
    const std::map<std::pair<PostId, ActorId>, std::string>& reactions() const noexcept { return m_reactions; }
    const std::vector<Chat>& chats() const noexcept { return m_chats; }
    const std::vector<Message>& messages() const noexcept { return m_messages; }
    const std::vector<Channel>& channels() const noexcept { return m_channels; }

    /// Ephemeral posts are hidden once their age exceeds this many ticks.
    std::uint64_t ephemeral_ticks() const;
    bool expired(const Post& post, std::uint64_t now) const;

    bool blocked_either(ActorId a, ActorId b) const;
    bool shares_channel(ActorId a, ActorId b) const;
    /// Friends, a follow in either direction, or a shared channel.
    bool connected(ActorId a, ActorId b) const;
    bool can_see(ActorId viewer, const Post& post, std::uint64_t now) const;

    /// Oldest-first texts of the author's posts (all kinds, incl. deleted).
    std::vector<std::string> post_history(ActorId author, std::size_t window = 3) const;
    /// Oldest-first texts of the comments on a post.
    std::vector<std::string> comment_history(PostId post, std::size_t window = 3) const;
    std::vector<std::string> channel_names() const;
    std::span<const PostId> posts_by(ActorId author) const;
    std::span<const CommentId> comments_on(PostId post) const;
    std::vector<ChatId> chats_of(ActorId actor) const;
    std::vector<ChatId> unread_chats(ActorId actor) const;
    std::optional<ChatId> direct_chat(ActorId a, ActorId b) const;
    std::optional<ActorId> last_sender(const Chat& chat) const;

    /// Deterministic structured dump for diffing.
    std::string export_text() const;

    bool operator==(const World&) const = default;

private:
    void require_seq(const SimEvent& e) const;
    void require_visible_post(ActorId viewer, PostId post, std::uint64_t now) const;
    void validate(const SimEvent& e) const;
    void mutate(const SimEvent& e);

    bool m_started = false;
    std::uint64_t m_tick = 0;
    std::uint64_t m_next_seq = 0;
    GenesisPayload m_genesis;
    ActionSet m_feasible;
    std::vector<Member> m_members;
    SocialGraph m_graph;
    std::set<ActorPair> m_pending;
    std::set<ActorPair> m_blocks;
    std::set<ActorPair> m_mutes;
    std::vector<Post> m_posts;
    std::vector<Comment> m_comments;
    std::map<std::pair<PostId, ActorId>, std::string> m_reactions;
    std::vector<Chat> m_chats;
    std::vector<Message> m_messages;
    std::vector<Channel> m_channels;
    std::vector<std::vector<PostId>> m_posts_by_author;
    std::vector<std::vector<CommentId>> m_comments_by_post;
};

/// Feed for `viewer` at tick `now`: every post `can_see` admits, newest
/// first under Chronological order, by reactions + comments (ties newest
/// first) under Algorithmic. Throws WorldError("UnknownViewer").
std::vector<const Post*> visible_posts(const World& world, ActorId viewer, std::uint64_t now);

/// The newest `limit` posts visible to `viewer`, newest first, regardless of
/// the configured order.
std::vector<const Post*> recent_visible(const World& world, ActorId viewer, std::uint64_t now, std::size_t limit);

/// Ephemeral posts past their lifetime at `now` (still present in the log).
std::vector<PostId> expired_ephemeral(const World& world, std::uint64_t now);

/// Folds a full log into a world; an empty log gives an empty world.
World restore(std::span<const SimEvent> log);

} // namespace metaspace
