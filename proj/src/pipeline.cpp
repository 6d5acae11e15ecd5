#include "metaspace/pipeline.hpp"

#include <exception>

#include "metaspace/errors.hpp"
#include "metaspace/rng.hpp"

namespace metaspace {

namespace {

template <typename F>
auto with_retries(int attempts, F&& f)
{
    std::exception_ptr last;
    for (int i = 0; i < std::max(1, attempts); ++i) {
        try {
            return f(static_cast<std::uint64_t>(i));
        } catch (const AttributeError&) {
            last = std::current_exception();
        } catch (const FeatureError&) {
            last = std::current_exception();
        }
    }
    std::rethrow_exception(last);
}

} // namespace

std::string_view phase_name(Phase phase)
{
    switch (phase) {
    case Phase::ConvertingMetaphor: return "ConvertingMetaphor";
    case Phase::MappingFeatures: return "MappingFeatures";
    case Phase::GeneratingAgents: return "GeneratingAgents";
    case Phase::BuildingGraph: return "BuildingGraph";
    case Phase::Running: return "Running";
    case Phase::Stopped: return "Stopped";
    case Phase::Failed: return "Failed";
    }
    return "?";
}

MetaphorAttributes convert_metaphor(Gateway& gateway, const SpatialMetaphor& metaphor, std::uint64_t seed,
                                    int attempts)
{
    Bindings b;
    b["metaphorKeyword"] = metaphor.keyword();
    return with_retries(attempts, [&](std::uint64_t k) {
        return parse_attributes(gateway.generate(PromptId::MetaphorConversion, b, mix_seed(seed, 0xA77, k)));
    });
}

FeatureResponse map_features(Gateway& gateway, const MetaphorAttributes& attrs, std::uint64_t seed, int attempts)
{
    Bindings b;
    b["descr.llm_descr"] = to_json(attrs).dump();
    return with_retries(attempts, [&](std::uint64_t k) {
        auto response = parse_feature_response(gateway.generate(PromptId::FeatureMapping, b, mix_seed(seed, 0xFEA, k)));
        if (!validate_config(response.config).empty()) {
            throw FeatureError("InvalidConfig", "config", "mapped configuration is invalid");
        }
        return response;
    });
}

SimEvent build_genesis(Gateway& gateway, const SpatialMetaphor& metaphor, const PipelineOptions& options)
{
    auto phase = [&](Phase p) {
        if (options.on_phase) {
            options.on_phase(p);
        }
    };
    GenesisPayload g;
    g.keyword = metaphor.keyword();
    g.seed = options.seed;
    g.minutes_per_tick = options.minutes_per_tick;

    phase(Phase::ConvertingMetaphor);
    g.attrs = convert_metaphor(gateway, metaphor, options.seed, options.attempts);

    phase(Phase::MappingFeatures);
    if (options.config) {
        if (!validate_config(*options.config).empty()) {
            throw FeatureError("InvalidConfig", "config", "supplied configuration is invalid");
        }
        g.config = *options.config;
        g.rationale = "Configuration supplied by the operator.";
    } else {
        auto mapped = map_features(gateway, g.attrs, options.seed, options.attempts);
        g.config = mapped.config;
        g.rationale = mapped.rationale;
    }

    phase(Phase::GeneratingAgents);
    g.roster = generate_roster(gateway, g.attrs, g.keyword, g.config, mix_seed(options.seed, 0xA6E), options.parallelism);

    phase(Phase::BuildingGraph);
    g.graph = build_graph(g.roster.size(), g.config.graph, mix_seed(options.seed, 0x6A5));

    return SimEvent{0, 0, kSystemActor, EventKind::Genesis, std::move(g)};
}

} // namespace metaspace
