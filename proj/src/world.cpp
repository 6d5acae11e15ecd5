#include "metaspace/world.hpp"

#include <algorithm>

#include "metaspace/errors.hpp"
#include "metaspace/text_metrics.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

namespace {

[[noreturn]] void violation(const std::string& field, const std::string& rule)
{
    throw WorldError("InvariantViolation", field, field + ": " + rule);
}

void require(bool ok, const std::string& field, const std::string& rule)
{
    if (!ok) {
        violation(field, rule);
    }
}

void require_text(const std::string& text, const std::string& field)
{
    require(!utf8::trim(text).empty(), field, "must not be blank");
}

template <typename T>
const T& payload_as(const SimEvent& e)
{
    return std::get<T>(e.payload);
}

} // namespace

std::optional<ActorId> World::find_member(std::string_view id_name) const
{
    for (std::size_t i = 0; i < m_members.size(); ++i) {
        if (m_members[i].id_name == id_name) {
            return static_cast<ActorId>(i);
        }
    }
    return std::nullopt;
}

std::uint64_t World::ephemeral_ticks() const
{
    const int mpt = std::max(1, m_genesis.minutes_per_tick);
    return static_cast<std::uint64_t>(kMinutesPerDay / mpt);
}

bool World::expired(const Post& post, std::uint64_t now) const
{
    return post.ephemeral && now > post.created_tick && now - post.created_tick > ephemeral_ticks();
}

bool World::blocked_either(ActorId a, ActorId b) const
{
    return m_blocks.contains({a, b}) || m_blocks.contains({b, a});
}

bool World::shares_channel(ActorId a, ActorId b) const
{
    return std::any_of(m_channels.begin(), m_channels.end(),
                       [&](const Channel& c) { return c.members.contains(a) && c.members.contains(b); });
}

bool World::connected(ActorId a, ActorId b) const
{
    return m_graph.are_friends(a, b) || m_graph.follows_(a, b) || m_graph.follows_(b, a) || shares_channel(a, b);
}

bool World::can_see(ActorId viewer, const Post& post, std::uint64_t now) const
{
    if (post.deleted || expired(post, now)) {
        return false;
    }
    if (post.author == viewer) {
        return true;
    }
    if (blocked_either(viewer, post.author) || m_mutes.contains({viewer, post.author})) {
        return false;
    }
    if (post.channel && !m_channels[*post.channel].members.contains(viewer)) {
        return false;
    }
    const bool restricted =
        post.visibility == Visibility::Private || config().privacy_setting == PrivacySetting::InvitedOnly;
    return !restricted || connected(viewer, post.author);
}

std::vector<std::string> World::post_history(ActorId author, std::size_t window) const
{
    std::vector<std::string> out;
    if (author >= m_posts_by_author.size()) {
        return out;
    }
    const auto& ids = m_posts_by_author[author];
    const std::size_t from = ids.size() > window ? ids.size() - window : 0;
    for (std::size_t i = from; i < ids.size(); ++i) {
        out.push_back(m_posts[ids[i]].text);
    }
    return out;
}

std::vector<std::string> World::comment_history(PostId post, std::size_t window) const
{
    std::vector<std::string> out;
    if (post >= m_comments_by_post.size()) {
        return out;
    }
    const auto& ids = m_comments_by_post[post];
    const std::size_t from = ids.size() > window ? ids.size() - window : 0;
    for (std::size_t i = from; i < ids.size(); ++i) {
        out.push_back(m_comments[ids[i]].text);
    }
    return out;
}

std::vector<std::string> World::channel_names() const
{
    std::vector<std::string> out;
    out.reserve(m_channels.size());
    for (const auto& c : m_channels) {
        out.push_back(c.name);
    }
    return out;
}

std::span<const PostId> World::posts_by(ActorId author) const
{
    if (author >= m_posts_by_author.size()) {
        return {};
    }
    return m_posts_by_author[author];
}

std::span<const CommentId> World::comments_on(PostId post) const
{
    if (post >= m_comments_by_post.size()) {
        return {};
    }
    return m_comments_by_post[post];
}

std::vector<ChatId> World::chats_of(ActorId actor) const
{
    std::vector<ChatId> out;
    for (const auto& c : m_chats) {
        if (std::binary_search(c.participants.begin(), c.participants.end(), actor)) {
            out.push_back(c.id);
        }
    }
    return out;
}

std::vector<ChatId> World::unread_chats(ActorId actor) const
{
    std::vector<ChatId> out;
    for (ChatId id : chats_of(actor)) {
        const auto& msgs = m_chats[id].messages;
        if (std::any_of(msgs.begin(), msgs.end(), [&](MessageId m) { return !m_messages[m].read_by.contains(actor); })) {
            out.push_back(id);
        }
    }
    return out;
}

std::optional<ChatId> World::direct_chat(ActorId a, ActorId b) const
{
    const ActorPair key = unordered(a, b);
    for (const auto& c : m_chats) {
        if (!c.group && c.participants.size() == 2 && c.participants[0] == key.first && c.participants[1] == key.second) {
            return c.id;
        }
    }
    return std::nullopt;
}

std::optional<ActorId> World::last_sender(const Chat& chat) const
{
    if (chat.messages.empty()) {
        return std::nullopt;
    }
    return m_messages[chat.messages.back()].sender;
}

void World::require_seq(const SimEvent& e) const
{
    require(e.seq == m_next_seq, "seq", "expected " + std::to_string(m_next_seq) + ", got " + std::to_string(e.seq));
    require(e.tick >= m_tick, "tick", "must not decrease");
    require(e.payload.index() == payload_index(e.kind), "payload", "schema does not match the event kind");
}

void World::require_visible_post(ActorId viewer, PostId post, std::uint64_t now) const
{
    require(post < m_posts.size(), "post", "unknown post " + std::to_string(post));
    require(can_see(viewer, m_posts[post], now), "post", "not visible to the actor");
}

void World::validate(const SimEvent& e) const
{
    require_seq(e);
    if (!m_started) {
        require(e.kind == EventKind::Genesis, "kind", "the first event must be the genesis");
        const auto& g = payload_as<GenesisPayload>(e);
        require(validate_config(g.config).empty(), "config", "invalid platform configuration");
        require(g.roster.size() == static_cast<std::size_t>(g.config.user_count), "roster", "size must equal user_count");
        require(g.graph.size == g.roster.size(), "graph", "size must equal roster size");
        require(g.minutes_per_tick >= 1 && g.minutes_per_tick <= kMinutesPerDay, "minutes_per_tick", "out of range");
        require(e.actor == kSystemActor, "actor", "genesis has no actor");
        return;
    }
    require(e.kind != EventKind::Genesis, "kind", "genesis may occur only once");
    require(is_member(e.actor), "actor", "unknown member " + std::to_string(e.actor));
    if (auto action = as_action(e.kind)) {
        require(m_feasible.contains(*action), "kind", std::string(event_kind_name(e.kind)) + " is not offered");
    }
    const ActorId actor = e.actor;
    const std::uint64_t now = e.tick;

    auto require_other_member = [&](ActorId target) {
        require(is_member(target), "target", "unknown member " + std::to_string(target));
        require(target != actor, "target", "must differ from the actor");
    };

    switch (e.kind) {
    case EventKind::AddPost:
    case EventKind::AddChannelPost:
    case EventKind::AddEphemeralContent: {
        const auto& p = payload_as<PostPayload>(e);
        require(p.id == m_posts.size(), "id", "expected next post id");
        require_text(p.text, "text");
        require(p.ephemeral == (e.kind == EventKind::AddEphemeralContent), "ephemeral", "must match the event kind");
        if (e.kind == EventKind::AddChannelPost) {
            require(p.channel.has_value(), "channel", "channel post needs a channel");
        }
        if (e.kind == EventKind::AddPost) {
            require(!p.channel, "channel", "personal post has no channel");
        }
        if (p.channel) {
            require(config().connection_type == ConnectionType::GroupBased, "channel", "requires a group-based space");
            require(*p.channel < m_channels.size(), "channel", "unknown channel");
            require(m_channels[*p.channel].members.contains(actor), "channel", "actor is not a member");
        }
        break;
    }
    case EventKind::AddCommentOnPost:
    case EventKind::AddCommentOnComment: {
        const auto& c = payload_as<CommentPayload>(e);
        require(c.id == m_comments.size(), "id", "expected next comment id");
        require_text(c.text, "text");
        require_visible_post(actor, c.post, now);
        require(c.parent.has_value() == (e.kind == EventKind::AddCommentOnComment), "parent", "must match the event kind");
        if (c.parent) {
            require(config().commenting == Commenting::NestedThreads, "parent", "replies need nested threads");
            require(*c.parent < m_comments.size() && m_comments[*c.parent].post == c.post, "parent",
                    "must be a comment on the same post");
        }
        break;
    }
    case EventKind::React: {
        const auto& r = payload_as<ReactPayload>(e);
        require_visible_post(actor, r.post, now);
        require(reaction_allowed(config().reactions, r.token), "token", "'" + r.token + "' is not offered");
        break;
    }
    case EventKind::StartNewChat:
    case EventKind::StartNewGroupChat: {
        const auto& s = payload_as<StartChatPayload>(e);
        require(s.id == m_chats.size(), "id", "expected next chat id");
        require(s.message == m_messages.size(), "message", "expected next message id");
        require_text(s.text, "text");
        require(std::is_sorted(s.participants.begin(), s.participants.end()) &&
                    std::adjacent_find(s.participants.begin(), s.participants.end()) == s.participants.end(),
                "participants", "must be ascending and distinct");
        require(std::binary_search(s.participants.begin(), s.participants.end(), actor), "participants",
                "must include the actor");
        if (e.kind == EventKind::StartNewChat) {
            require(s.participants.size() == 2, "participants", "a direct chat has exactly two members");
            const ActorId other = s.participants[0] == actor ? s.participants[1] : s.participants[0];
            require(!direct_chat(actor, other), "participants", "a direct chat already exists");
        } else {
            require(s.participants.size() >= 3, "participants", "a group chat needs at least three members");
        }
        for (ActorId p : s.participants) {
            require(is_member(p), "participants", "unknown member " + std::to_string(p));
            if (p == actor) {
                continue;
            }
            require(!blocked_either(actor, p), "participants", "blocked pair");
            if (config().messaging_audience == MessagingAudience::WithConnection) {
                require(connected(actor, p), "participants", "audience is limited to connections");
            }
        }
        std::size_t pairs = 0;
        for (std::size_t i = 0; i < s.participants.size(); ++i) {
            for (std::size_t j = i + 1; j < s.participants.size(); ++j) {
                const ActorPair key{s.participants[i], s.participants[j]};
                auto it = s.closeness.find(key);
                require(it != s.closeness.end(), "closeness", "missing a participant pair");
                if (auto known = m_graph.closeness_of(key.first, key.second)) {
                    require(it->second == *known, "closeness", "must equal the known closeness");
                } else {
                    require(it->second >= 1 && it->second <= kChatClosenessMax, "closeness",
                            "must be 1..5 between non-friends");
                }
                ++pairs;
            }
        }
        require(pairs == s.closeness.size(), "closeness", "entries for non-participants");
        break;
    }
    case EventKind::SendMessage1to1:
    case EventKind::SendMessageGroup: {
        const auto& m = payload_as<MessagePayload>(e);
        require(m.id == m_messages.size(), "id", "expected next message id");
        require_text(m.text, "text");
        require(m.chat < m_chats.size(), "chat", "unknown chat");
        const Chat& chat = m_chats[m.chat];
        require(chat.group == (e.kind == EventKind::SendMessageGroup), "chat", "chat type does not match");
        require(std::binary_search(chat.participants.begin(), chat.participants.end(), actor), "chat",
                "actor is not a participant");
        if (!is_human(actor)) {
            require(last_sender(chat) != actor, "chat", "the last message is already the actor's");
        }
        if (!chat.group) {
            const ActorId other = chat.participants[0] == actor ? chat.participants[1] : chat.participants[0];
            require(!blocked_either(actor, other), "chat", "blocked pair");
        }
        break;
    }
    case EventKind::CreateChannel: {
        const auto& c = payload_as<CreateChannelPayload>(e);
        require(c.id == m_channels.size(), "id", "expected next channel id");
        require_text(c.name, "name");
        const auto names = channel_names();
        require(channel_name_is_distinct(c.name, names), "name", "too similar to an existing channel");
        break;
    }
    case EventKind::JoinChannel: {
        const auto& j = payload_as<JoinChannelPayload>(e);
        require(j.channel < m_channels.size(), "channel", "unknown channel");
        require(!m_channels[j.channel].members.contains(actor), "channel", "already a member");
        break;
    }
    case EventKind::ReadUnreadMessages: {
        for (ChatId id : payload_as<ReadPayload>(e).chats) {
            require(id < m_chats.size(), "chats", "unknown chat");
            const auto& ps = m_chats[id].participants;
            require(std::binary_search(ps.begin(), ps.end(), actor), "chats", "actor is not a participant");
        }
        break;
    }
    case EventKind::SendFriendRequest: {
        const ActorId target = payload_as<FriendRequestPayload>(e).target;
        require_other_member(target);
        require(!m_graph.are_friends(actor, target), "target", "already friends");
        require(!m_pending.contains({actor, target}) && !m_pending.contains({target, actor}), "target",
                "a request is already pending");
        break;
    }
    case EventKind::AcceptFriendRequest: {
        const auto& a = payload_as<AcceptFriendPayload>(e);
        require(m_pending.contains({a.requester, actor}), "requester", "no pending request");
        require(a.closeness >= kFriendClosenessMin && a.closeness <= 10, "closeness", "friends are 5..10");
        break;
    }
    case EventKind::UpdateRelation: {
        const auto& r = payload_as<RelationPayload>(e);
        require_other_member(r.target);
        switch (r.change) {
        case RelationChange::Follow: require(!m_graph.follows_(actor, r.target), "change", "already following"); break;
        case RelationChange::Unfollow: require(m_graph.follows_(actor, r.target), "change", "not following"); break;
        case RelationChange::Unfriend: require(m_graph.are_friends(actor, r.target), "change", "not friends"); break;
        }
        break;
    }
    case EventKind::UpdateRestriction: {
        const auto& r = payload_as<RestrictionPayload>(e);
        require_other_member(r.target);
        require(config().networking_control.contains(r.control), "control", "not offered");
        const auto& set = r.control == NetworkingControl::Block ? m_blocks : m_mutes;
        require(set.contains({actor, r.target}) != r.active, "active", "restriction already in that state");
        break;
    }
    case EventKind::UpdatePostVisibility: {
        const auto& v = payload_as<VisibilityPayload>(e);
        require(v.post < m_posts.size(), "post", "unknown post");
        const Post& p = m_posts[v.post];
        require(p.author == actor && !p.deleted, "post", "only the author may change a live post");
        require(p.visibility != v.visibility, "visibility", "must change the current value");
        break;
    }
    case EventKind::EditPost:
    case EventKind::DeletePost: {
        const bool edit = e.kind == EventKind::EditPost;
        const PostId id = edit ? payload_as<EditPostPayload>(e).post : payload_as<DeletePostPayload>(e).post;
        require(config().content_management.contains(edit ? ContentManagement::Edit : ContentManagement::Delete),
                "kind", "content management does not offer this");
        require(id < m_posts.size(), "post", "unknown post");
        require(m_posts[id].author == actor && !m_posts[id].deleted, "post", "only the author may change a live post");
        if (edit) {
            require_text(payload_as<EditPostPayload>(e).text, "text");
        }
        break;
    }
    case EventKind::Genesis:
    case EventKind::RegisterParticipant: break;
    }
}

void World::check(const SimEvent& event) const
{
    // the registering actor is not a member yet
    if (event.kind == EventKind::RegisterParticipant && m_started) {
        require_seq(event);
        const auto& r = std::get<RegisterPayload>(event.payload);
        require(r.id == m_members.size() && event.actor == r.id, "id", "expected next member id");
        require(!utf8::trim(r.id_name).empty() && !find_member(r.id_name), "id_name", "must be non-blank and unique");
        require(r.closeness >= 1 && r.closeness <= 10, "closeness", "must be 1..10");
        return;
    }
    validate(event);
}

void World::apply(const SimEvent& event)
{
    check(event);
    mutate(event);
    m_tick = event.tick;
    ++m_next_seq;
}

void World::mutate(const SimEvent& e)
{
    const ActorId actor = e.actor;
    switch (e.kind) {
    case EventKind::Genesis: {
        m_genesis = payload_as<GenesisPayload>(e);
        m_started = true;
        m_feasible = feasible_actions(m_genesis.config);
        m_graph = m_genesis.graph;
        for (const auto& a : m_genesis.roster) {
            m_members.push_back({a.id_name, a.user_name, false});
        }
        m_posts_by_author.resize(m_members.size());
        break;
    }
    case EventKind::AddPost:
    case EventKind::AddChannelPost:
    case EventKind::AddEphemeralContent: {
        const auto& p = payload_as<PostPayload>(e);
        m_posts.push_back({p.id, actor, p.text, p.channel, p.ephemeral, e.tick, config().visibility_control});
        m_posts_by_author[actor].push_back(p.id);
        m_comments_by_post.emplace_back();
        break;
    }
    case EventKind::AddCommentOnPost:
    case EventKind::AddCommentOnComment: {
        const auto& c = payload_as<CommentPayload>(e);
        m_comments.push_back({c.id, actor, c.post, c.parent, c.text, e.tick});
        m_comments_by_post[c.post].push_back(c.id);
        ++m_posts[c.post].comment_count;
        break;
    }
    case EventKind::React: {
        const auto& r = payload_as<ReactPayload>(e);
        auto [it, inserted] = m_reactions.insert_or_assign({r.post, actor}, r.token);
        if (inserted) {
            ++m_posts[r.post].reaction_count;
        }
        break;
    }
    case EventKind::StartNewChat:
    case EventKind::StartNewGroupChat: {
        const auto& s = payload_as<StartChatPayload>(e);
        m_chats.push_back({s.id, e.kind == EventKind::StartNewGroupChat, s.participants, s.closeness, {s.message}});
        m_messages.push_back({s.message, s.id, actor, s.text, e.tick, {actor}, s.off_topic});
        break;
    }
    case EventKind::SendMessage1to1:
    case EventKind::SendMessageGroup: {
        const auto& m = payload_as<MessagePayload>(e);
        m_messages.push_back({m.id, m.chat, actor, m.text, e.tick, {actor}, m.off_topic});
        m_chats[m.chat].messages.push_back(m.id);
        break;
    }
    case EventKind::CreateChannel: {
        const auto& c = payload_as<CreateChannelPayload>(e);
        m_channels.push_back({c.id, c.name, c.bio, actor, {actor}, e.tick});
        break;
    }
    case EventKind::JoinChannel: m_channels[payload_as<JoinChannelPayload>(e).channel].members.insert(actor); break;
    case EventKind::ReadUnreadMessages:
        for (ChatId id : payload_as<ReadPayload>(e).chats) {
            for (MessageId m : m_chats[id].messages) {
                m_messages[m].read_by.insert(actor);
            }
        }
        break;
    case EventKind::SendFriendRequest: m_pending.insert({actor, payload_as<FriendRequestPayload>(e).target}); break;
    case EventKind::AcceptFriendRequest: {
        const auto& a = payload_as<AcceptFriendPayload>(e);
        m_pending.erase({a.requester, actor});
        m_graph.friends.insert(unordered(a.requester, actor));
        m_graph.closeness[unordered(a.requester, actor)] = a.closeness;
        break;
    }
    case EventKind::UpdateRelation: {
        const auto& r = payload_as<RelationPayload>(e);
        switch (r.change) {
        case RelationChange::Follow: m_graph.follows.insert({actor, r.target}); break;
        case RelationChange::Unfollow: m_graph.follows.erase({actor, r.target}); break;
        case RelationChange::Unfriend: m_graph.friends.erase(unordered(actor, r.target)); break;
        }
        break;
    }
    case EventKind::UpdateRestriction: {
        const auto& r = payload_as<RestrictionPayload>(e);
        auto& set = r.control == NetworkingControl::Block ? m_blocks : m_mutes;
        if (r.active) {
            set.insert({actor, r.target});
        } else {
            set.erase({actor, r.target});
        }
        break;
    }
    case EventKind::UpdatePostVisibility: {
        const auto& v = payload_as<VisibilityPayload>(e);
        m_posts[v.post].visibility = v.visibility;
        break;
    }
    case EventKind::RegisterParticipant: {
        const auto& r = payload_as<RegisterPayload>(e);
        for (ActorId other = 0; other < m_members.size(); ++other) {
            m_graph.closeness.try_emplace(unordered(other, r.id), r.closeness);
        }
        m_members.push_back({r.id_name, r.user_name, true});
        m_graph.size = m_members.size();
        m_posts_by_author.emplace_back();
        break;
    }
    case EventKind::EditPost: {
        const auto& p = payload_as<EditPostPayload>(e);
        m_posts[p.post].text = p.text;
        break;
    }
    case EventKind::DeletePost: m_posts[payload_as<DeletePostPayload>(e).post].deleted = true; break;
    }
}

std::string World::export_text() const
{
    nlohmann::ordered_json out;
    out["tick"] = m_tick;
    out["next_seq"] = m_next_seq;
    out["config"] = format_config(config());
    nlohmann::ordered_json members = nlohmann::ordered_json::array();
    for (const auto& m : m_members) {
        members.push_back({{"id_name", m.id_name}, {"user_name", m.user_name}, {"human", m.human}});
    }
    out["members"] = std::move(members);
    out["graph"] = to_json(m_graph);
    auto pairs = [](const std::set<ActorPair>& s) {
        nlohmann::ordered_json a = nlohmann::ordered_json::array();
        for (const auto& [x, y] : s) {
            a.push_back({x, y});
        }
        return a;
    };
    out["pending"] = pairs(m_pending);
    out["blocks"] = pairs(m_blocks);
    out["mutes"] = pairs(m_mutes);
    nlohmann::ordered_json posts = nlohmann::ordered_json::array();
    for (const auto& p : m_posts) {
        posts.push_back({{"id", p.id},
                         {"author", p.author},
                         {"text", p.text},
                         {"channel", p.channel ? nlohmann::ordered_json(*p.channel) : nlohmann::ordered_json(nullptr)},
                         {"ephemeral", p.ephemeral},
                         {"tick", p.created_tick},
                         {"visibility", label(p.visibility)},
                         {"deleted", p.deleted},
                         {"reactions", p.reaction_count},
                         {"comments", p.comment_count}});
    }
    out["posts"] = std::move(posts);
    nlohmann::ordered_json comments = nlohmann::ordered_json::array();
    for (const auto& c : m_comments) {
        comments.push_back({{"id", c.id},
                            {"author", c.author},
                            {"post", c.post},
                            {"parent", c.parent ? nlohmann::ordered_json(*c.parent) : nlohmann::ordered_json(nullptr)},
                            {"text", c.text},
                            {"tick", c.created_tick}});
    }
    out["comments"] = std::move(comments);
    nlohmann::ordered_json reactions = nlohmann::ordered_json::array();
    for (const auto& [key, token] : m_reactions) {
        reactions.push_back({key.first, key.second, token});
    }
    out["reactions"] = std::move(reactions);
    nlohmann::ordered_json chats = nlohmann::ordered_json::array();
    for (const auto& c : m_chats) {
        nlohmann::ordered_json msgs = nlohmann::ordered_json::array();
        for (MessageId id : c.messages) {
            const auto& m = m_messages[id];
            msgs.push_back({{"id", m.id},
                            {"sender", m.sender},
                            {"text", m.text},
                            {"tick", m.created_tick},
                            {"read_by", m.read_by},
                            {"off_topic", m.off_topic}});
        }
        nlohmann::ordered_json closeness = nlohmann::ordered_json::array();
        for (const auto& [pair, v] : c.closeness) {
            closeness.push_back({pair.first, pair.second, v});
        }
        chats.push_back({{"id", c.id},
                         {"group", c.group},
                         {"participants", c.participants},
                         {"closeness", std::move(closeness)},
                         {"messages", std::move(msgs)}});
    }
    out["chats"] = std::move(chats);
    nlohmann::ordered_json channels = nlohmann::ordered_json::array();
    for (const auto& c : m_channels) {
        channels.push_back({{"id", c.id},
                            {"name", c.name},
                            {"bio", c.bio},
                            {"creator", c.creator},
                            {"members", c.members},
                            {"tick", c.created_tick}});
    }
    out["channels"] = std::move(channels);
    return out.dump(1) + "\n";
}

std::vector<const Post*> visible_posts(const World& world, ActorId viewer, std::uint64_t now)
{
    if (!world.is_member(viewer)) {
        throw WorldError("UnknownViewer", std::to_string(viewer), "unknown viewer " + std::to_string(viewer));
    }
    std::vector<const Post*> out;
    for (const auto& p : world.posts()) {
        if (world.can_see(viewer, p, now)) {
            out.push_back(&p);
        }
    }
    auto newest = [](const Post* a, const Post* b) {
        return a->created_tick != b->created_tick ? a->created_tick > b->created_tick : a->id > b->id;
    };
    if (world.config().content_order == ContentOrder::Chronological) {
        std::sort(out.begin(), out.end(), newest);
    } else {
        std::sort(out.begin(), out.end(), [&](const Post* a, const Post* b) {
            const auto sa = a->reaction_count + a->comment_count;
            const auto sb = b->reaction_count + b->comment_count;
            return sa != sb ? sa > sb : newest(a, b);
        });
    }
    return out;
}

std::vector<const Post*> recent_visible(const World& world, ActorId viewer, std::uint64_t now, std::size_t limit)
{
    std::vector<const Post*> out;
    const auto& posts = world.posts();
    for (auto it = posts.rbegin(); it != posts.rend() && out.size() < limit; ++it) {
        if (world.can_see(viewer, *it, now)) {
            out.push_back(&*it);
        }
    }
    return out;
}

std::vector<PostId> expired_ephemeral(const World& world, std::uint64_t now)
{
    std::vector<PostId> out;
    for (const auto& p : world.posts()) {
        if (world.expired(p, now)) {
            out.push_back(p.id);
        }
    }
    return out;
}

World restore(std::span<const SimEvent> log)
{
    World w;
    for (const auto& e : log) {
        w.apply(e);
    }
    return w;
}

} // namespace metaspace
