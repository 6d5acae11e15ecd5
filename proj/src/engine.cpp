#include "metaspace/engine.hpp"

#include <algorithm>
#include <cctype>

#include "metaspace/errors.hpp"
#include "metaspace/stub_provider.hpp"
#include "metaspace/text_metrics.hpp"

namespace metaspace {

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items)
{
    return rng.pick(std::span<const T>(items));
}

std::vector<ActorId> chat_partners(const World& w, ActorId agent, bool direct)
{
    std::vector<ActorId> out;
    const bool connections_only = w.config().messaging_audience == MessagingAudience::WithConnection;
    for (ActorId other = 0; other < w.members().size(); ++other) {
        if (other == agent || w.blocked_either(agent, other)) {
            continue;
        }
        if (connections_only && !w.connected(agent, other)) {
            continue;
        }
        if (direct && w.direct_chat(agent, other)) {
            continue;
        }
        out.push_back(other);
    }
    return out;
}

std::vector<ChatId> open_chats(const World& w, ActorId agent, bool group)
{
    std::vector<ChatId> out;
    for (ChatId id : w.chats_of(agent)) {
        const Chat& c = w.chats()[id];
        if (c.group != group || w.last_sender(c) == agent) {
            continue;
        }
        if (!group) {
            const ActorId other = c.participants[0] == agent ? c.participants[1] : c.participants[0];
            if (w.blocked_either(agent, other)) {
                continue;
            }
        }
        out.push_back(id);
    }
    return out;
}

std::vector<ChannelId> own_channels(const World& w, ActorId agent, bool member)
{
    std::vector<ChannelId> out;
    for (const auto& c : w.channels()) {
        if (c.members.contains(agent) == member) {
            out.push_back(c.id);
        }
    }
    return out;
}

std::vector<ActorId> incoming_requests(const World& w, ActorId agent)
{
    std::vector<ActorId> out;
    for (const auto& [from, to] : w.pending_requests()) {
        if (to == agent) {
            out.push_back(from);
        }
    }
    return out;
}

std::vector<ActorId> friend_candidates(const World& w, ActorId agent)
{
    auto ranked = recommend_users(agent, w.graph(), w.roster(), w.pending_requests());
    if (ranked.size() > kFriendCandidates) {
        ranked.resize(kFriendCandidates);
    }
    return ranked;
}

std::vector<ActorId> restriction_targets(const World& w, ActorId agent)
{
    std::vector<ActorId> out;
    for (ActorId other = 0; other < w.members().size(); ++other) {
        if (other == agent) {
            continue;
        }
        const bool restricted = w.blocks().contains({agent, other}) || w.mutes().contains({agent, other});
        if (restricted || w.connected(agent, other)) {
            out.push_back(other);
        }
    }
    return out;
}

std::vector<PostId> live_posts(const World& w, ActorId agent)
{
    std::vector<PostId> out;
    for (PostId id : w.posts_by(agent)) {
        if (!w.posts()[id].deleted) {
            out.push_back(id);
        }
    }
    return out;
}

int closeness_between(const World& w, ActorId a, ActorId b)
{
    if (a == b) {
        return 10;
    }
    return w.graph().closeness_of(a, b).value_or(1);
}

std::string names_with_closeness(const World& w, ActorId agent, const std::vector<ActorId>& participants,
                                 const std::map<ActorPair, int>& closeness)
{
    std::string out;
    for (ActorId p : participants) {
        if (p == agent) {
            continue;
        }
        if (!out.empty()) {
            out += ", ";
        }
        out += w.members()[p].id_name + ": " + std::to_string(closeness.at(unordered(agent, p)));
    }
    return out;
}

std::optional<std::size_t> first_index(std::string_view text, std::size_t n)
{
    std::size_t i = 0;
    while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) {
        ++i;
    }
    if (i == text.size()) {
        return std::nullopt;
    }
    std::size_t value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) && value < 1'000'000) {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
    }
    return value < n ? std::optional(value) : std::nullopt;
}

} // namespace

double activity_level(const AgentProfile& agent) { return agent.traits.mean(); }

bool activity_gate(const AgentProfile& agent, Rng& rng, const ActivityPolicy& policy)
{
    const double p = policy ? policy(agent) : activity_level(agent);
    return rng.uniform() < p;
}

double governing_trait(ActionKind kind, const Traits& t)
{
    switch (kind) {
    case ActionKind::AddPost:
    case ActionKind::AddChannelPost:
    case ActionKind::AddEphemeralContent: return t.posting;
    case ActionKind::AddCommentOnPost:
    case ActionKind::AddCommentOnComment: return t.commenting;
    case ActionKind::React: return t.reacting;
    case ActionKind::StartNewChat:
    case ActionKind::StartNewGroupChat:
    case ActionKind::SendMessage1to1:
    case ActionKind::SendMessageGroup: return t.messaging;
    case ActionKind::CreateChannel:
    case ActionKind::JoinChannel: return t.comm;
    case ActionKind::ReadUnreadMessages: return t.notification;
    case ActionKind::SendFriendRequest:
    case ActionKind::AcceptFriendRequest:
    case ActionKind::UpdateRelation:
    case ActionKind::UpdateRestriction:
    case ActionKind::UpdatePostVisibility: return t.updating;
    }
    return 0.0;
}

ActionSet state_feasible(const World& w, ActorId agent, std::uint64_t now)
{
    ActionSet out;
    const auto window = recent_visible(w, agent, now, kReactionWindow);
    for (ActionKind k : w.feasible().values()) {
        bool ok = false;
        switch (k) {
        case ActionKind::AddPost:
        case ActionKind::AddEphemeralContent:
        case ActionKind::CreateChannel: ok = true; break;
        case ActionKind::AddChannelPost: ok = !own_channels(w, agent, true).empty(); break;
        case ActionKind::AddCommentOnPost:
        case ActionKind::React: ok = !window.empty(); break;
        case ActionKind::AddCommentOnComment:
            ok = std::any_of(window.begin(), window.end(), [](const Post* p) { return p->comment_count > 0; });
            break;
        case ActionKind::StartNewChat: ok = !chat_partners(w, agent, true).empty(); break;
        case ActionKind::StartNewGroupChat: ok = chat_partners(w, agent, false).size() >= 2; break;
        case ActionKind::SendMessage1to1: ok = !open_chats(w, agent, false).empty(); break;
        case ActionKind::SendMessageGroup: ok = !open_chats(w, agent, true).empty(); break;
        case ActionKind::JoinChannel: ok = !own_channels(w, agent, false).empty(); break;
        case ActionKind::ReadUnreadMessages: ok = !w.unread_chats(agent).empty(); break;
        case ActionKind::SendFriendRequest: ok = !friend_candidates(w, agent).empty(); break;
        case ActionKind::AcceptFriendRequest: ok = !incoming_requests(w, agent).empty(); break;
        case ActionKind::UpdateRelation: ok = w.members().size() > 1; break;
        case ActionKind::UpdateRestriction: ok = !restriction_targets(w, agent).empty(); break;
        case ActionKind::UpdatePostVisibility: ok = !live_posts(w, agent).empty(); break;
        }
        if (ok) {
            out.insert(k);
        }
    }
    return out;
}

std::optional<ActionKind> sample_action(const ActionSet& candidates, const Traits& traits, Rng& rng)
{
    const auto kinds = candidates.values();
    double total = 0.0;
    for (ActionKind k : kinds) {
        total += std::max(0.0, governing_trait(k, traits));
    }
    if (kinds.empty() || total <= 0.0) {
        return std::nullopt;
    }
    double r = rng.uniform() * total;
    for (ActionKind k : kinds) {
        const double w = std::max(0.0, governing_trait(k, traits));
        if (w <= 0.0) {
            continue;
        }
        if (r < w) {
            return k;
        }
        r -= w;
    }
    for (auto it = kinds.rbegin(); it != kinds.rend(); ++it) {
        if (governing_trait(*it, traits) > 0.0) {
            return *it;
        }
    }
    return std::nullopt;
}

std::optional<ActionKind> select_action(const World& world, ActorId agent, std::uint64_t now, Rng& rng)
{
    return sample_action(state_feasible(world, agent, now), world.roster().at(agent).traits, rng);
}

Engine::Engine(std::span<const SimEvent> log, Gateway& gateway, EngineOptions options)
    : m_gateway(gateway), m_options(std::move(options))
{
    if (log.empty() || log.front().kind != EventKind::Genesis) {
        throw EngineError("MissingGenesis", "log", "an engine needs a log that starts with the genesis event");
    }
    for (const auto& e : log) {
        m_world.apply(e);
        m_log.push_back(e);
    }
    m_tick = m_world.tick();
    if (m_options.publish_snapshots) {
        m_snapshot = std::make_shared<const World>(m_world);
    }
}

std::shared_ptr<const World> Engine::snapshot() const
{
    std::lock_guard lock(m_snapshot_mutex);
    return m_snapshot;
}

SimClock Engine::clock() const { return {m_tick, m_world.genesis().minutes_per_tick}; }

SimEvent Engine::draft(ActorId actor, EventKind kind, Payload payload) const
{
    return SimEvent{m_tick, m_world.next_seq(), actor, kind, std::move(payload)};
}

void Engine::emit(SimEvent event)
{
    event.tick = m_tick;
    event.seq = m_world.next_seq();
    m_world.apply(event);
    m_log.push_back(event);
    if (m_sink) {
        m_sink(m_log.back());
    }
}

std::vector<SimEvent> Engine::run(std::uint64_t ticks)
{
    std::vector<SimEvent> out;
    for (std::uint64_t i = 0; i < ticks; ++i) {
        auto events = step();
        out.insert(out.end(), std::make_move_iterator(events.begin()), std::make_move_iterator(events.end()));
    }
    return out;
}

std::vector<SimEvent> Engine::step()
{
    ++m_tick;
    const std::size_t first = m_log.size();
    drain_humans();
    const std::size_t agents = m_world.agent_count();
    for (ActorId agent = 0; agent < agents; ++agent) {
        Rng rng(mix_seed(m_options.master_seed, m_tick, agent));
        const AgentProfile& profile = m_world.roster()[agent];
        if (!activity_gate(profile, rng, m_options.activity)) {
            ++m_stats.idle;
            continue;
        }
        auto kind = select_action(m_world, agent, m_tick, rng);
        if (!kind) {
            ++m_stats.no_action;
            continue;
        }
        auto event = act(agent, *kind, rng);
        if (!event) {
            ++m_stats.discarded;
            continue;
        }
        emit(std::move(*event));
    }
    if (m_options.publish_snapshots) {
        auto copy = std::make_shared<const World>(m_world);
        std::lock_guard lock(m_snapshot_mutex);
        m_snapshot = std::move(copy);
    }
    return {m_log.begin() + static_cast<std::ptrdiff_t>(first), m_log.end()};
}

std::future<SimEvent> Engine::submit(HumanCommand command)
{
    Pending p{std::move(command), {}};
    auto future = p.promise.get_future();
    std::lock_guard lock(m_queue_mutex);
    m_queue.push_back(std::move(p));
    return future;
}

void Engine::drain_humans()
{
    std::deque<Pending> batch;
    {
        std::lock_guard lock(m_queue_mutex);
        batch.swap(m_queue);
    }
    for (auto& p : batch) {
        try {
            HumanCommand& cmd = p.command;
            if (cmd.kind == EventKind::Genesis || cmd.kind == EventKind::RegisterParticipant) {
                throw EngineError("InvalidCommand", std::string(event_kind_name(cmd.kind)),
                                  "humans cannot issue this event kind");
            }
            if (cmd.payload.index() != payload_index(cmd.kind)) {
                throw EngineError("InvalidCommand", "payload", "payload does not match the event kind");
            }
            auto actor = m_world.find_member(cmd.participant);
            if (!actor) {
                const auto id = static_cast<ActorId>(m_world.members().size());
                emit(draft(id, EventKind::RegisterParticipant, RegisterPayload{id, cmd.participant, cmd.participant, 5}));
                actor = id;
            } else if (!m_world.is_human(*actor)) {
                throw EngineError("InvalidCommand", cmd.participant, "that id belongs to an agent");
            }
            std::visit(
                [&](auto& pl) {
                    using T = std::decay_t<decltype(pl)>;
                    if constexpr (std::is_same_v<T, PostPayload>) {
                        pl.id = static_cast<PostId>(m_world.posts().size());
                    } else if constexpr (std::is_same_v<T, CommentPayload>) {
                        pl.id = static_cast<CommentId>(m_world.comments().size());
                    } else if constexpr (std::is_same_v<T, MessagePayload>) {
                        pl.id = static_cast<MessageId>(m_world.messages().size());
                    } else if constexpr (std::is_same_v<T, CreateChannelPayload>) {
                        pl.id = static_cast<ChannelId>(m_world.channels().size());
                    } else if constexpr (std::is_same_v<T, StartChatPayload>) {
                        pl.id = static_cast<ChatId>(m_world.chats().size());
                        pl.message = static_cast<MessageId>(m_world.messages().size());
                        pl.participants.push_back(*actor);
                        std::sort(pl.participants.begin(), pl.participants.end());
                        pl.participants.erase(std::unique(pl.participants.begin(), pl.participants.end()),
                                              pl.participants.end());
                        pl.closeness.clear();
                        for (std::size_t i = 0; i < pl.participants.size(); ++i) {
                            for (std::size_t j = i + 1; j < pl.participants.size(); ++j) {
                                const ActorPair key{pl.participants[i], pl.participants[j]};
                                pl.closeness[key] =
                                    m_world.graph().closeness_of(key.first, key.second).value_or(kChatClosenessMax);
                            }
                        }
                    }
                },
                cmd.payload);
            SimEvent e = draft(*actor, cmd.kind, cmd.payload);
            m_world.check(e);
            emit(e);
            p.promise.set_value(m_log.back());
        } catch (...) {
            p.promise.set_exception(std::current_exception());
        }
    }
}

Bindings Engine::base_bindings(ActorId agent) const
{
    const AgentProfile& a = m_world.roster()[agent];
    const auto& g = m_world.genesis();
    Bindings b;
    b["platforms"] = m_options.platforms;
    b["tone"] = m_options.tones;
    b["user_roles"] = std::string(role_name(a.role)) + ": " + std::string(role_goal(a.role));
    b["user_interests"] = a.interests;
    b["user_id"] = a.id_name;
    b["descr.llm_descr"] = to_json(g.attrs).dump();
    auto fields = attribute_fields(g.attrs);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        b["descr.llm_descr." + std::string(kAttributeKeys[i])] = *fields[i];
    }
    b["metaphorKeyword"] = g.keyword;
    return b;
}

std::optional<SimEvent> Engine::act(ActorId agent, ActionKind kind, Rng& rng)
{
    switch (kind) {
    case ActionKind::AddPost:
    case ActionKind::AddChannelPost:
    case ActionKind::AddEphemeralContent: return make_post(agent, kind, rng);
    case ActionKind::AddCommentOnPost:
    case ActionKind::AddCommentOnComment: return make_comment(agent, kind, rng);
    case ActionKind::React: return make_react(agent, rng);
    case ActionKind::StartNewChat:
    case ActionKind::StartNewGroupChat: return make_start_chat(agent, kind, rng);
    case ActionKind::SendMessage1to1:
    case ActionKind::SendMessageGroup: return make_message(agent, kind, rng);
    case ActionKind::CreateChannel: return make_channel(agent, rng);
    case ActionKind::JoinChannel: return make_join(agent, rng);
    case ActionKind::ReadUnreadMessages:
        return draft(agent, EventKind::ReadUnreadMessages, ReadPayload{m_world.unread_chats(agent)});
    default: return make_update(agent, kind, rng);
    }
}

std::optional<SimEvent> Engine::make_post(ActorId agent, ActionKind kind, Rng& rng)
{
    Bindings b = base_bindings(agent);
    std::optional<ChannelId> channel;
    PromptId prompt = kind == ActionKind::AddEphemeralContent ? PromptId::PostPersonalEphemeral : PromptId::PostPersonal;
    if (kind == ActionKind::AddChannelPost) {
        channel = pick(rng, own_channels(m_world, agent, true));
        const Channel& c = m_world.channels()[*channel];
        b["sel_comm.comm_name"] = c.name;
        b["sel_comm.comm_bio"] = c.bio;
        prompt = PromptId::PostChannel;
    }
    const auto history = m_world.post_history(agent, kHistoryWindow);
    b["last_posts"] = history;
    b["ctx.history"] = history;
    const auto constraints = kind == ActionKind::AddEphemeralContent ? ephemeral_constraints() : post_constraints();
    auto result = m_gateway.generate_checked(
        prompt, b, constraints, [&](std::string_view t) { return passes_post_constraints(t, history); }, rng.next(),
        m_options.content_attempts);
    m_stats.rejected_content += static_cast<std::uint64_t>(result.attempts - (result.text ? 1 : 0));
    if (!result.text) {
        return std::nullopt;
    }
    const auto id = static_cast<PostId>(m_world.posts().size());
    return draft(agent, to_event(kind), PostPayload{id, *result.text, channel, kind == ActionKind::AddEphemeralContent});
}

std::optional<SimEvent> Engine::make_comment(ActorId agent, ActionKind kind, Rng& rng)
{
    auto window = recent_visible(m_world, agent, m_tick, kReactionWindow);
    const bool reply = kind == ActionKind::AddCommentOnComment;
    if (reply) {
        std::erase_if(window, [](const Post* p) { return p->comment_count == 0; });
    }
    const Post& post = *pick(rng, window);
    std::optional<CommentId> parent;
    std::string target_text = post.text;
    ActorId target_author = post.author;
    if (reply) {
        auto ids = m_world.comments_on(post.id);
        parent = ids[rng.below(ids.size())];
        const Comment& c = m_world.comments()[*parent];
        target_text = c.text;
        target_author = c.author;
    }
    Bindings b = base_bindings(agent);
    const auto history = m_world.comment_history(post.id, kHistoryWindow);
    b["closeness"] = std::to_string(closeness_between(m_world, agent, target_author));
    b["sel_post.content"] = target_text;
    b["ctx.history"] = history;
    auto result = m_gateway.generate_checked(
        PromptId::Comment, b, comment_constraints(),
        [&](std::string_view t) { return passes_comment_constraints(t, history); }, rng.next(),
        m_options.content_attempts);
    m_stats.rejected_content += static_cast<std::uint64_t>(result.attempts - (result.text ? 1 : 0));
    if (!result.text) {
        return std::nullopt;
    }
    const auto id = static_cast<CommentId>(m_world.comments().size());
    return draft(agent, to_event(kind), CommentPayload{id, post.id, parent, *result.text});
}

std::optional<SimEvent> Engine::make_react(ActorId agent, Rng& rng)
{
    const auto window = recent_visible(m_world, agent, m_tick, kReactionWindow);
    const Post& post = *pick(rng, window);
    const auto tokens = reaction_tokens(m_world.config().reactions);
    std::string token = pick(rng, tokens);
    if (m_world.roster()[agent].role == Role::Bully && rng.chance(0.5)) {
        for (const char* negative : {"down", "angry"}) {
            if (std::find(tokens.begin(), tokens.end(), negative) != tokens.end()) {
                token = negative;
            }
        }
    }
    return draft(agent, EventKind::React, ReactPayload{post.id, token});
}

std::optional<std::string> Engine::chat_text(ActorId agent, const std::vector<ActorId>& participants,
                                             const std::map<ActorPair, int>& closeness, const Chat* chat,
                                             bool off_topic, Rng& rng)
{
    const bool group = chat ? chat->group : participants.size() > 2;
    Bindings b = base_bindings(agent);
    std::vector<std::string> recent;
    std::string formatted;
    if (chat) {
        const auto& ids = chat->messages;
        const std::size_t from = ids.size() > 5 ? ids.size() - 5 : 0;
        for (std::size_t i = from; i < ids.size(); ++i) {
            const Message& m = m_world.messages()[ids[i]];
            recent.push_back(m.text);
            formatted += (formatted.empty() ? "" : "\n") + m_world.members()[m.sender].id_name + ": " + m.text;
        }
    }
    b["formattedMessages"] = formatted.empty() ? std::string("(no messages yet)") : formatted;
    b["people.length"] = std::to_string(participants.size() - 1);
    if (group) {
        b["closeness_levels"] = names_with_closeness(m_world, agent, participants, closeness);
    } else {
        const ActorId other = participants[0] == agent ? participants[1] : participants[0];
        b["closeness_levels"] = std::to_string(closeness.at(unordered(agent, other)));
    }
    b["ctx.history"] = recent;
    b["ctx.off_topic"] = std::string(off_topic ? "1" : "0");
    auto result = m_gateway.generate_checked(group ? PromptId::ChatGroup : PromptId::ChatDyadic, b, chat_constraints(),
                                             {}, rng.next(), m_options.content_attempts);
    m_stats.rejected_content += static_cast<std::uint64_t>(result.attempts - (result.text ? 1 : 0));
    return result.text;
}

std::optional<SimEvent> Engine::make_start_chat(ActorId agent, ActionKind kind, Rng& rng)
{
    const bool direct = kind == ActionKind::StartNewChat;
    auto candidates = chat_partners(m_world, agent, direct);
    std::vector<ActorId> participants{agent};
    if (direct) {
        participants.push_back(pick(rng, candidates));
    } else {
        const int k = rng.between(2, static_cast<int>(std::min<std::size_t>(4, candidates.size())));
        rng.shuffle(candidates.begin(), candidates.end());
        participants.insert(participants.end(), candidates.begin(), candidates.begin() + k);
    }
    std::sort(participants.begin(), participants.end());
    std::map<ActorPair, int> closeness;
    for (std::size_t i = 0; i < participants.size(); ++i) {
        for (std::size_t j = i + 1; j < participants.size(); ++j) {
            const ActorPair key{participants[i], participants[j]};
            auto known = m_world.graph().closeness_of(key.first, key.second);
            closeness[key] = known ? *known : rng.between(1, kChatClosenessMax);
        }
    }
    const bool off_topic = rng.chance(m_options.off_topic_rate);
    auto text = chat_text(agent, participants, closeness, nullptr, off_topic, rng);
    if (!text) {
        return std::nullopt;
    }
    StartChatPayload p{static_cast<ChatId>(m_world.chats().size()), participants, closeness,
                       static_cast<MessageId>(m_world.messages().size()), *text, off_topic};
    return draft(agent, to_event(kind), std::move(p));
}

std::optional<SimEvent> Engine::make_message(ActorId agent, ActionKind kind, Rng& rng)
{
    const auto chats = open_chats(m_world, agent, kind == ActionKind::SendMessageGroup);
    const Chat& chat = m_world.chats()[pick(rng, chats)];
    const bool off_topic = rng.chance(m_options.off_topic_rate);
    auto text = chat_text(agent, chat.participants, chat.closeness, &chat, off_topic, rng);
    if (!text) {
        return std::nullopt;
    }
    return draft(agent, to_event(kind),
                 MessagePayload{chat.id, static_cast<MessageId>(m_world.messages().size()), *text, off_topic});
}

std::optional<SimEvent> Engine::make_channel(ActorId agent, Rng& rng)
{
    const AgentProfile& a = m_world.roster()[agent];
    const std::string& interest = pick(rng, a.interests);
    const auto names = m_world.channel_names();
    const std::uint64_t seed = rng.next();
    for (int attempt = 0; attempt < kChannelAttempts; ++attempt) {
        auto identity = generate_channel_identity(interest, m_world.genesis().attrs, mix_seed(seed, attempt));
        if (channel_name_is_distinct(identity.name, names)) {
            return draft(agent, EventKind::CreateChannel,
                         CreateChannelPayload{static_cast<ChannelId>(m_world.channels().size()), identity.name,
                                              identity.bio});
        }
        ++m_stats.rejected_content;
    }
    return std::nullopt;
}

std::optional<SimEvent> Engine::make_join(ActorId agent, Rng& rng)
{
    const auto options = own_channels(m_world, agent, false);
    std::set<std::string> cues;
    for (const auto& interest : m_world.roster()[agent].interests) {
        for (auto& t : tokenize(interest)) {
            cues.insert(std::move(t));
        }
    }
    std::string listing;
    std::size_t best = 0;
    int best_score = -1;
    for (std::size_t i = 0; i < options.size(); ++i) {
        const Channel& c = m_world.channels()[options[i]];
        listing += std::to_string(i) + ": " + c.name + " - " + c.bio + "\n";
        int score = 0;
        for (const auto& t : tokenize(c.name + " " + c.bio)) {
            score += cues.contains(t) ? 1 : 0;
        }
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    Bindings b = base_bindings(agent);
    b["communities"] = listing;
    b["ctx.choice"] = std::to_string(best);
    const std::string reply = m_gateway.generate(PromptId::JoinChannel, b, rng.next());
    const std::size_t chosen = first_index(reply, options.size()).value_or(best);
    return draft(agent, EventKind::JoinChannel, JoinChannelPayload{options[chosen]});
}

std::optional<SimEvent> Engine::make_update(ActorId agent, ActionKind kind, Rng& rng)
{
    switch (kind) {
    case ActionKind::SendFriendRequest:
        return draft(agent, EventKind::SendFriendRequest, FriendRequestPayload{pick(rng, friend_candidates(m_world, agent))});
    case ActionKind::AcceptFriendRequest:
        return draft(agent, EventKind::AcceptFriendRequest,
                     AcceptFriendPayload{pick(rng, incoming_requests(m_world, agent)), rng.between(kFriendClosenessMin, 10)});
    case ActionKind::UpdateRelation: {
        auto target = static_cast<ActorId>(rng.below(m_world.members().size() - 1));
        if (target >= agent) {
            ++target;
        }
        RelationChange change = RelationChange::Follow;
        if (m_world.graph().are_friends(agent, target)) {
            change = RelationChange::Unfriend;
        } else if (m_world.graph().follows_(agent, target)) {
            change = RelationChange::Unfollow;
        }
        return draft(agent, EventKind::UpdateRelation, RelationPayload{target, change});
    }
    case ActionKind::UpdateRestriction: {
        const ActorId target = pick(rng, restriction_targets(m_world, agent));
        const auto controls = m_world.config().networking_control.values();
        const NetworkingControl control = controls[rng.below(controls.size())];
        const auto& set = control == NetworkingControl::Block ? m_world.blocks() : m_world.mutes();
        return draft(agent, EventKind::UpdateRestriction, RestrictionPayload{target, control, !set.contains({agent, target})});
    }
    case ActionKind::UpdatePostVisibility: {
        const Post& p = m_world.posts()[pick(rng, live_posts(m_world, agent))];
        const Visibility flipped = p.visibility == Visibility::Public ? Visibility::Private : Visibility::Public;
        return draft(agent, EventKind::UpdatePostVisibility, VisibilityPayload{p.id, flipped});
    }
    default: return std::nullopt;
    }
}

} // namespace metaspace
