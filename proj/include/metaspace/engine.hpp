#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "metaspace/gateway.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/world.hpp"

namespace metaspace {

struct SimClock
{
    std::uint64_t tick = 0;
    int minutes_per_tick = 5;

    std::uint64_t minutes() const { return tick * static_cast<std::uint64_t>(minutes_per_tick); }
};

/// Probability that an agent is active in a tick.
using ActivityPolicy = std::function<double(const AgentProfile&)>;

/// Mean of the seven traits.
double activity_level(const AgentProfile& agent);
bool activity_gate(const AgentProfile& agent, Rng& rng, const ActivityPolicy& policy = {});

/// Trait value that weights `kind` in action selection.
double governing_trait(ActionKind kind, const Traits& traits);

inline constexpr std::size_t kReactionWindow = 20;
inline constexpr double kOffTopicRate = 0.10;
inline constexpr std::size_t kFriendCandidates = 5;
inline constexpr int kChannelAttempts = 3;

/// Offered actions the agent can actually perform in the current state.
ActionSet state_feasible(const World& world, ActorId agent, std::uint64_t now);

/// Samples one of `candidates` proportionally to its governing trait;
/// nothing when the set is empty or every weight is zero.
std::optional<ActionKind> sample_action(const ActionSet& candidates, const Traits& traits, Rng& rng);

std::optional<ActionKind> select_action(const World& world, ActorId agent, std::uint64_t now, Rng& rng);

/// Tuning knobs that do not affect the log format.
struct EngineOptions
{
    std::uint64_t master_seed = 0;
    ActivityPolicy activity;
    double off_topic_rate = kOffTopicRate;
    int content_attempts = Gateway::kDefaultAttempts;
    std::vector<std::string> platforms = {"Instagram", "X", "Reddit", "Discord"};
    std::vector<std::string> tones = {"casual", "reflective", "playful", "earnest", "wry", "warm"};
    bool publish_snapshots = false; ///< copy the world after every tick for readers
};

/// A human action waiting for the next tick boundary. Ids the engine
/// assigns (post, comment, chat, message, channel) are filled in.
struct HumanCommand
{
    std::string participant;
    EventKind kind = EventKind::AddPost;
    Payload payload;
};

struct EngineStats
{
    std::uint64_t discarded = 0;         ///< actions dropped after failed checks
    std::uint64_t rejected_content = 0;  ///< generation attempts that failed a check
    std::uint64_t idle = 0;              ///< gated-out agent turns
    std::uint64_t no_action = 0;         ///< active turns with nothing to do
};

/// Single-writer tick loop over one world. Only the thread calling `step`
/// or `run` mutates; other threads read `snapshot()` and `submit` commands.
class Engine
{
public:
    using Sink = std::function<void(const SimEvent&)>;

    /// `log` must start with the genesis event; it is replayed.
    Engine(std::span<const SimEvent> log, Gateway& gateway, EngineOptions options);

    /// Advances `ticks` ticks and returns the events emitted.
    std::vector<SimEvent> run(std::uint64_t ticks);
    std::vector<SimEvent> step();

    /// Queues a human command for the next tick. The future resolves to the
    /// applied event or holds the WorldError that rejected it.
    std::future<SimEvent> submit(HumanCommand command);

    /// Called for every event after it is applied, in order.
    void set_sink(Sink sink) { m_sink = std::move(sink); }

    const World& world() const noexcept { return m_world; }
    /// Last published copy (requires publish_snapshots), null before that.
    std::shared_ptr<const World> snapshot() const;
    SimClock clock() const;
    const EngineStats& stats() const noexcept { return m_stats; }
    const std::vector<SimEvent>& log() const noexcept { return m_log; }

private:
    struct Pending
    {
        HumanCommand command;
        std::promise<SimEvent> promise;
    };

    void emit(SimEvent event);
    void drain_humans();
    std::optional<SimEvent> act(ActorId agent, ActionKind kind, Rng& rng);
    std::optional<SimEvent> make_post(ActorId agent, ActionKind kind, Rng& rng);
    std::optional<SimEvent> make_comment(ActorId agent, ActionKind kind, Rng& rng);
    std::optional<SimEvent> make_react(ActorId agent, Rng& rng);
    std::optional<SimEvent> make_start_chat(ActorId agent, ActionKind kind, Rng& rng);
    std::optional<SimEvent> make_message(ActorId agent, ActionKind kind, Rng& rng);
    std::optional<SimEvent> make_channel(ActorId agent, Rng& rng);
    std::optional<SimEvent> make_join(ActorId agent, Rng& rng);
    std::optional<SimEvent> make_update(ActorId agent, ActionKind kind, Rng& rng);
    std::optional<std::string> chat_text(ActorId agent, const std::vector<ActorId>& participants,
                                         const std::map<ActorPair, int>& closeness, const Chat* chat,
                                         bool off_topic, Rng& rng);
    SimEvent draft(ActorId actor, EventKind kind, Payload payload) const;
    Bindings base_bindings(ActorId agent) const;

    Gateway& m_gateway;
    EngineOptions m_options;
    World m_world;
    std::shared_ptr<const World> m_snapshot;
    std::vector<SimEvent> m_log;
    std::uint64_t m_tick = 0;
    EngineStats m_stats;
    Sink m_sink;

    mutable std::mutex m_snapshot_mutex;
    std::mutex m_queue_mutex;
    std::deque<Pending> m_queue;
};

} // namespace metaspace
