#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "metaspace/events.hpp"
#include "metaspace/gateway.hpp"

namespace metaspace {

enum class Phase : std::uint8_t {
    ConvertingMetaphor,
    MappingFeatures,
    GeneratingAgents,
    BuildingGraph,
    Running,
    Stopped,
    Failed,
};

std::string_view phase_name(Phase phase);

struct PipelineOptions
{
    std::uint64_t seed = 0;
    std::optional<PlatformConfig> config; ///< skips the feature mapping when set
    int minutes_per_tick = 5;
    int parallelism = 4;
    int attempts = 3; ///< per provider parse step
    std::function<void(Phase)> on_phase;
};

MetaphorAttributes convert_metaphor(Gateway& gateway, const SpatialMetaphor& metaphor, std::uint64_t seed,
                                    int attempts = 3);

FeatureResponse map_features(Gateway& gateway, const MetaphorAttributes& attrs, std::uint64_t seed, int attempts = 3);

/// Metaphor to genesis event: attributes, features, roster, graph. Parse
/// failures are retried with fresh seeds; the last error propagates.
SimEvent build_genesis(Gateway& gateway, const SpatialMetaphor& metaphor, const PipelineOptions& options);

} // namespace metaspace
