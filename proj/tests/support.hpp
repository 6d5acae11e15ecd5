#pragma once

#include <deque>
#include <mutex>

#include "metaspace/engine.hpp"
#include "metaspace/pipeline.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/stub_provider.hpp"
#include "metaspace/world.hpp"

namespace metaspace::fixtures {

/// Replays canned responses in order, then defers to the stub.
class ScriptedProvider final : public Provider
{
public:
    explicit ScriptedProvider(std::deque<std::string> replies, bool metered = true)
        : m_replies(std::move(replies)), m_metered(metered)
    {
    }

    std::string complete(const GenerationRequest& request) override
    {
        std::lock_guard lock(m_mutex);
        ++m_calls;
        m_prompts.push_back(request.prompt);
        if (m_replies.empty()) {
            return m_stub.complete(request);
        }
        std::string r = std::move(m_replies.front());
        m_replies.pop_front();
        return r;
    }
    std::string_view name() const override { return "scripted"; }
    bool metered() const override { return m_metered; }

    int calls() const
    {
        std::lock_guard lock(m_mutex);
        return m_calls;
    }
    std::vector<PromptId> prompts() const
    {
        std::lock_guard lock(m_mutex);
        return m_prompts;
    }

private:
    mutable std::mutex m_mutex;
    std::deque<std::string> m_replies;
    std::vector<PromptId> m_prompts;
    StubProvider m_stub;
    bool m_metered;
    int m_calls = 0;
};

inline PlatformConfig base_config(int users = 8)
{
    PlatformConfig c;
    c.user_count = users;
    c.messaging_types = {MessagingType::OneToOne, MessagingType::Group};
    c.networking_control = {NetworkingControl::Block, NetworkingControl::Mute};
    c.content_management = {ContentManagement::Edit, ContentManagement::Delete};
    c.reactions = Reactions::Expanded;
    c.commenting = Commenting::NestedThreads;
    c.ephemeral_enabled = true;
    return c;
}

inline PlatformConfig random_config(Rng& rng, int users)
{
    PlatformConfig c;
    c.timeline = rng.chance(0.5) ? Timeline::FeedBased : Timeline::ChatBased;
    c.content_order = rng.chance(0.5) ? ContentOrder::Chronological : ContentOrder::Algorithmic;
    c.connection_type = rng.chance(0.5) ? ConnectionType::NetworkBased : ConnectionType::GroupBased;
    c.user_count = users;
    c.commenting = rng.chance(0.5) ? Commenting::FlatThreads : Commenting::NestedThreads;
    c.reactions = static_cast<Reactions>(rng.below(3));
    c.content_management = ContentManagementSet::from_bits(rng.below(4));
    c.account_types = AccountTypeSet::from_bits(1 + rng.below(7));
    c.identity = static_cast<Identity>(rng.below(3));
    c.messaging_types = MessagingTypeSet::from_bits(1 + rng.below(3));
    c.messaging_audience = rng.chance(0.5) ? MessagingAudience::WithConnection : MessagingAudience::Everyone;
    c.ephemeral_enabled = rng.chance(0.5);
    c.visibility_control = rng.chance(0.5) ? Visibility::Public : Visibility::Private;
    c.discovery = rng.chance(0.5) ? Discovery::TopicBased : Discovery::PopularityBased;
    c.networking_control = NetworkingControlSet::from_bits(rng.below(4));
    c.privacy_setting = rng.chance(0.5) ? PrivacySetting::InvitedOnly : PrivacySetting::ShowAll;
    return c;
}

inline SimEvent make_genesis(const PlatformConfig& config, std::uint64_t seed = 1,
                             std::string_view metaphor = "a lantern-lit night market", int minutes_per_tick = 5)
{
    Gateway gateway(std::make_shared<StubProvider>());
    PipelineOptions o;
    o.seed = seed;
    o.config = config;
    o.minutes_per_tick = minutes_per_tick;
    o.parallelism = 1;
    return build_genesis(gateway, SpatialMetaphor::make(metaphor), o);
}

inline World world_from(const SimEvent& genesis)
{
    World w;
    w.apply(genesis);
    return w;
}

/// Builds the next event for `w` at `tick`.
inline SimEvent next_event(const World& w, std::uint64_t tick, ActorId actor, EventKind kind, Payload payload)
{
    return SimEvent{tick, w.next_seq(), actor, kind, std::move(payload)};
}

} // namespace metaspace::fixtures
