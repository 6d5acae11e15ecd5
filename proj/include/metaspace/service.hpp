#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "metaspace/engine.hpp"
#include "metaspace/pipeline.hpp"

namespace metaspace {

struct ServiceOptions
{
    std::chrono::milliseconds tick_interval{2000};
    int workers = 2; ///< concurrent pipelines
    std::function<std::shared_ptr<Provider>()> provider; ///< default: the stub
    Budget budget;
    std::optional<std::string> db_dir; ///< one store file per simulation when set
    int parallelism = 4;
};

struct CreateRequest
{
    std::string metaphor;
    std::uint64_t seed = 0;
    std::optional<PlatformConfig> config;
    int minutes_per_tick = 5;
    std::optional<std::chrono::milliseconds> tick_interval;
    std::optional<std::uint64_t> max_ticks; ///< stop on its own after this many ticks
};

/// Owns running simulations. Each runs its pipeline on the worker pool,
/// then ticks on its own thread; readers see per-tick snapshots.
class SimulationService
{
public:
    explicit SimulationService(ServiceOptions options = {});
    ~SimulationService();
    SimulationService(const SimulationService&) = delete;
    SimulationService& operator=(const SimulationService&) = delete;

    /// Validates the metaphor and queues the pipeline. Throws
    /// AttributeError("InvalidMetaphor").
    std::string create(const CreateRequest& request);

    /// All read calls throw ServiceError("UnknownSimulation") for a bad id.
    nlohmann::ordered_json status(const std::string& id) const;
    Phase phase(const std::string& id) const;
    nlohmann::ordered_json config(const std::string& id) const;
    nlohmann::ordered_json feed(const std::string& id, const std::string& viewer) const;
    nlohmann::ordered_json channels(const std::string& id) const;
    nlohmann::ordered_json chat(const std::string& id, ChatId chat) const;
    nlohmann::ordered_json profile(const std::string& id, const std::string& member) const;

    /// Gates feasibility and payload domains, then waits for the next tick
    /// to apply the command. Throws ServiceError("InfeasibleAction",
    /// "InvalidPayload", "NotRunning") or the WorldError that rejected it.
    SimEvent inject(const std::string& id, const std::string& participant, EventKind kind,
                    const nlohmann::json& payload);

    void stop(const std::string& id);

    /// Events with seq >= from (waits up to `wait` for the first one).
    /// `finished` is set when the simulation has stopped or failed and
    /// nothing newer will arrive.
    std::vector<SimEvent> events(const std::string& id, std::uint64_t from, std::chrono::milliseconds wait,
                                 bool* finished = nullptr) const;

    bool wait_for_phase(const std::string& id, Phase phase, std::chrono::milliseconds timeout) const;

    void shutdown();

    struct Simulation;

private:
    std::shared_ptr<Simulation> find(const std::string& id) const;
    void run_pipeline(const std::shared_ptr<Simulation>& sim);

    struct Impl;
    std::unique_ptr<Impl> m_impl;
};

/// HTTP front end. Errors are {"error": {"code", "message"}}.
class HttpServer
{
public:
    explicit HttpServer(SimulationService& service);
    ~HttpServer();

    /// Binds to `port` (0 picks a free one) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void serve();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> m_impl;
};

} // namespace metaspace
