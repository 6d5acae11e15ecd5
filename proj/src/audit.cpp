#include "metaspace/audit.hpp"

#include "metaspace/errors.hpp"
#include "metaspace/text_metrics.hpp"

namespace metaspace {

namespace {

std::vector<TokenBag> bags(const std::vector<std::string>& texts)
{
    std::vector<TokenBag> out;
    out.reserve(texts.size());
    for (const auto& t : texts) {
        out.emplace_back(t);
    }
    return out;
}

bool is_channel_kind(EventKind k)
{
    return k == EventKind::CreateChannel || k == EventKind::JoinChannel || k == EventKind::AddChannelPost;
}

} // namespace

bool AuditReport::clean() const
{
    return !replay_error && post_violations == 0 && comment_violations == 0 && channel_name_violations == 0 &&
           infeasible_events == 0 && network_channel_events == 0 && disabled_ephemeral_posts == 0 &&
           consecutive_sender_violations == 0;
}

double AuditReport::off_topic_rate() const
{
    return agent_messages == 0 ? 0.0 : static_cast<double>(off_topic_messages) / static_cast<double>(agent_messages);
}

AuditReport audit_log(std::span<const SimEvent> log, kernels::Exec exec)
{
    AuditReport r;
    World world;
    std::vector<kernels::HistoryItem> post_items;
    std::vector<kernels::HistoryItem> comment_items;
    ActionSet offered;
    PlatformConfig config;

    for (const auto& e : log) {
        ++r.events;
        if (e.kind == EventKind::Genesis) {
            const auto& g = std::get<GenesisPayload>(e.payload);
            config = g.config;
            try {
                offered = feasible_actions(config);
            } catch (const Error&) {
                offered = {};
            }
        }
        const bool human = world.started() && world.is_human(e.actor);
        if (human || e.kind == EventKind::RegisterParticipant) {
            ++r.human_events;
        }
        if (auto action = as_action(e.kind)) {
            ++r.action_mix[std::string(action_name(*action))];
            if (!offered.contains(*action)) {
                ++r.infeasible_events;
            }
        }
        if (config.connection_type == ConnectionType::NetworkBased && is_channel_kind(e.kind)) {
            ++r.network_channel_events;
        }
        if (const auto* p = std::get_if<PostPayload>(&e.payload)) {
            if (!config.ephemeral_enabled && (p->ephemeral || e.kind == EventKind::AddEphemeralContent)) {
                ++r.disabled_ephemeral_posts;
            }
            if (!human && world.started()) {
                ++r.agent_posts;
                post_items.push_back({TokenBag(p->text), bags(world.post_history(e.actor, kHistoryWindow))});
            }
        }
        if (const auto* c = std::get_if<CommentPayload>(&e.payload); c && !human && world.started()) {
            ++r.agent_comments;
            comment_items.push_back({TokenBag(c->text), bags(world.comment_history(c->post, kHistoryWindow))});
        }
        if (!human && world.started()) {
            bool off_topic = false;
            bool message = false;
            std::optional<ChatId> chat;
            if (const auto* s = std::get_if<StartChatPayload>(&e.payload)) {
                message = true;
                off_topic = s->off_topic;
            } else if (const auto* m = std::get_if<MessagePayload>(&e.payload)) {
                message = true;
                off_topic = m->off_topic;
                chat = m->chat;
            }
            if (message) {
                ++r.agent_messages;
                r.off_topic_messages += off_topic ? 1 : 0;
            }
            if (chat && *chat < world.chats().size() && world.last_sender(world.chats()[*chat]) == e.actor) {
                ++r.consecutive_sender_violations;
            }
        }
        try {
            world.apply(e);
        } catch (const Error& ex) {
            r.replay_error = "seq " + std::to_string(e.seq) + ": " + ex.what();
            break;
        }
    }

    for (const auto& s : kernels::history_similarity(post_items, exec)) {
        if (s.overlap >= kPostOverlapLimit || s.max_cosine >= kPostCosineLimit) {
            ++r.post_violations;
        }
    }
    for (const auto& s : kernels::history_similarity(comment_items, exec)) {
        if (s.overlap >= kCommentOverlapLimit) {
            ++r.comment_violations;
        }
    }

    const auto names = world.channel_names();
    r.max_channel_similarity = kernels::max_pairwise_jaro_winkler(names, exec);
    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            if (jaro_winkler(names[i], names[j]) >= kChannelNameLimit) {
                ++r.channel_name_violations;
            }
        }
    }
    r.follows = world.graph().follows.size();
    r.friends = world.graph().friends.size();
    r.channels = world.channels().size();
    r.chats = world.chats().size();
    return r;
}

nlohmann::ordered_json to_json(const AuditReport& r)
{
    nlohmann::ordered_json j;
    j["events"] = r.events;
    j["agent_posts"] = r.agent_posts;
    j["agent_comments"] = r.agent_comments;
    j["agent_messages"] = r.agent_messages;
    j["off_topic_messages"] = r.off_topic_messages;
    j["off_topic_rate"] = r.off_topic_rate();
    j["human_events"] = r.human_events;
    j["action_mix"] = r.action_mix;
    j["graph"] = {{"follows", r.follows}, {"friends", r.friends}, {"channels", r.channels}, {"chats", r.chats}};
    j["violations"] = {{"post_similarity", r.post_violations},
                       {"comment_overlap", r.comment_violations},
                       {"channel_names", r.channel_name_violations},
                       {"infeasible", r.infeasible_events},
                       {"channel_under_network", r.network_channel_events},
                       {"ephemeral_disabled", r.disabled_ephemeral_posts},
                       {"consecutive_sender", r.consecutive_sender_violations}};
    j["max_channel_similarity"] = r.max_channel_similarity;
    j["replay_error"] = r.replay_error ? nlohmann::ordered_json(*r.replay_error) : nlohmann::ordered_json(nullptr);
    j["clean"] = r.clean();
    return j;
}

} // namespace metaspace
