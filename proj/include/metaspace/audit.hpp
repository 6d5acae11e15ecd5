#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "metaspace/kernels.hpp"
#include "metaspace/world.hpp"

namespace metaspace {

/// Independent re-check of a finished log. Content rules are evaluated
/// against the world as it was when each event was emitted; human events
/// are exempt from them, as they are in the engine.
struct AuditReport
{
    std::size_t events = 0;
    std::size_t agent_posts = 0;
    std::size_t agent_comments = 0;
    std::size_t agent_messages = 0;
    std::size_t off_topic_messages = 0;
    std::size_t human_events = 0;

    std::size_t post_violations = 0;
    std::size_t comment_violations = 0;
    std::size_t channel_name_violations = 0; ///< channel pairs with JW >= 0.7
    double max_channel_similarity = 0.0;
    std::size_t infeasible_events = 0;
    std::size_t network_channel_events = 0;
    std::size_t disabled_ephemeral_posts = 0;
    std::size_t consecutive_sender_violations = 0;

    std::map<std::string, std::size_t> action_mix;
    std::size_t follows = 0;
    std::size_t friends = 0;
    std::size_t channels = 0;
    std::size_t chats = 0;

    std::optional<std::string> replay_error;

    bool clean() const;
    double off_topic_rate() const;
};

AuditReport audit_log(std::span<const SimEvent> log, kernels::Exec exec = kernels::Exec::Parallel);

nlohmann::ordered_json to_json(const AuditReport& report);

} // namespace metaspace
