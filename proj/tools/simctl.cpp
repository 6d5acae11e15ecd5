#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "metaspace/audit.hpp"
#include "metaspace/errors.hpp"
#include "metaspace/pipeline.hpp"
#include "metaspace/remote_provider.hpp"
#include "metaspace/service.hpp"
#include "metaspace/store.hpp"
#include "metaspace/stub_provider.hpp"

using namespace metaspace;
using nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

std::vector<SimEvent> load_log(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return read_log(in);
}

std::shared_ptr<Provider> make_provider(const std::string& kind)
{
    if (kind == "remote") {
        return std::make_shared<RemoteProvider>(RemoteConfig::from_env());
    }
    return std::make_shared<StubProvider>();
}

ordered_json graph_stats(const World& w)
{
    const auto& g = w.graph();
    const double n = static_cast<double>(std::max<std::size_t>(1, g.size));
    std::vector<std::size_t> in_degree(g.size, 0);
    for (const auto& [a, b] : g.follows) {
        if (b < in_degree.size()) {
            ++in_degree[b];
        }
    }
    const std::size_t max_in = in_degree.empty() ? 0 : *std::max_element(in_degree.begin(), in_degree.end());
    return {{"nodes", g.size},
            {"follows", g.follows.size()},
            {"friends", g.friends.size()},
            {"mean_out_degree", static_cast<double>(g.follows.size()) / n},
            {"max_in_degree", max_in},
            {"channels", w.channels().size()},
            {"chats", w.chats().size()}};
}

struct RunArgs
{
    std::string metaphor;
    std::uint64_t ticks = 288;
    std::uint64_t seed = 1;
    std::string provider = "stub";
    std::string db;
    std::string export_log;
    std::string config;
    std::string export_config;
    std::string export_world;
    std::string export_roster;
    int minutes_per_tick = 5;
    int parallelism = 4;
};

int run(const RunArgs& a)
{
    auto provider = make_provider(a.provider);
    Gateway gateway(provider, {}, provider->metered() ? std::make_shared<StubProvider>() : nullptr);

    PipelineOptions p;
    p.seed = a.seed;
    p.minutes_per_tick = a.minutes_per_tick;
    p.parallelism = a.parallelism;
    if (!a.config.empty()) {
        p.config = parse_feature_response(slurp(a.config)).config;
    }
    p.on_phase = [](Phase phase) { std::cerr << "phase: " << phase_name(phase) << '\n'; };
    SimEvent genesis = build_genesis(gateway, SpatialMetaphor::make(a.metaphor), p);

    EngineOptions eo;
    eo.master_seed = a.seed;
    Engine engine(std::span<const SimEvent>(&genesis, 1), gateway, eo);
    std::cerr << "phase: Running\n";
    engine.run(a.ticks);
    const auto& log = engine.log();

    if (!a.export_log.empty()) {
        std::ofstream out(a.export_log, std::ios::binary);
        write_log(out, log);
    }
    if (!a.export_config.empty()) {
        spit(a.export_config, format_config(engine.world().config(), engine.world().genesis().rationale));
    }
    if (!a.export_world.empty()) {
        spit(a.export_world, engine.world().export_text());
    }
    if (!a.export_roster.empty()) {
        ordered_json roster = ordered_json::array();
        for (const auto& agent : engine.world().roster()) {
            roster.push_back(to_json(agent));
        }
        spit(a.export_roster, roster.dump(2) + "\n");
    }

    const auto& st = engine.stats();
    ordered_json summary = {{"events", log.size()},
                            {"ticks", engine.clock().tick},
                            {"agents", engine.world().agent_count()},
                            {"provider_calls", gateway.calls()},
                            {"degraded", gateway.degraded()},
                            {"discarded", st.discarded},
                            {"rejected_content", st.rejected_content},
                            {"idle_turns", st.idle},
                            {"graph", graph_stats(engine.world())}};
    if (!a.db.empty()) {
        Store store(a.db);
        store.append(log);
        store.save_snapshot(engine.world());
        store.save_stats({{"discarded", static_cast<double>(st.discarded)},
                          {"rejected_content", static_cast<double>(st.rejected_content)},
                          {"idle", static_cast<double>(st.idle)},
                          {"no_action", static_cast<double>(st.no_action)}});
        store.set_meta("metaphor", a.metaphor);
        store.set_meta("seed", std::to_string(a.seed));
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int replay(const std::string& path)
{
    const auto log = load_log(path);
    const World w = restore(log);
    ordered_json out = {{"events", log.size()},
                        {"tick", w.tick()},
                        {"members", w.members().size()},
                        {"posts", w.posts().size()},
                        {"comments", w.comments().size()},
                        {"messages", w.messages().size()},
                        {"graph", graph_stats(w)}};
    std::cout << out.dump(2) << '\n';
    return 0;
}

int metrics(const std::string& path)
{
    const auto log = load_log(path);
    const AuditReport report = audit_log(log);
    ordered_json out = to_json(report);
    if (!report.replay_error) {
        out["graph"] = graph_stats(restore(log));
    }
    std::cout << out.dump(2) << '\n';
    return report.clean() ? 0 : 3;
}

int validate(const std::string& path)
{
    const PlatformConfig cfg = parse_feature_response(slurp(path)).config;
    const auto violations = validate_config(cfg);
    for (const auto& v : violations) {
        std::cout << v.field << ": " << v.detail << '\n';
    }
    if (violations.empty()) {
        std::cout << "valid; feasible actions:";
        for (ActionKind k : feasible_actions(cfg).values()) {
            std::cout << ' ' << action_name(k);
        }
        std::cout << '\n';
    }
    return violations.empty() ? 0 : 2;
}

HttpServer* g_server = nullptr;

int serve(const std::string& host, int port, int tick_ms, const std::string& provider, const std::string& db_dir)
{
    ServiceOptions o;
    o.tick_interval = std::chrono::milliseconds(tick_ms);
    if (provider == "remote") {
        o.provider = [] { return make_provider("remote"); };
    }
    if (!db_dir.empty()) {
        o.db_dir = db_dir;
    }
    SimulationService service(o);
    HttpServer server(service);
    const int bound = server.bind(host, port);
    std::cerr << "listening on " << host << ':' << bound << '\n';
    g_server = &server;
    std::signal(SIGINT, [](int) {
        if (g_server) {
            g_server->stop();
        }
    });
    std::signal(SIGTERM, [](int) {
        if (g_server) {
            g_server->stop();
        }
    });
    server.serve();
    g_server = nullptr;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"simctl: generate and run metaphor-driven social spaces"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run_cmd = app.add_subcommand("run", "generate a space and run it in batch");
    run_cmd->add_option("--metaphor", ra.metaphor, "spatial metaphor keyword")->required();
    run_cmd->add_option("--ticks", ra.ticks, "ticks to simulate");
    run_cmd->add_option("--seed", ra.seed, "master seed");
    run_cmd->add_option("--provider", ra.provider, "text provider")->check(CLI::IsMember({"stub", "remote"}));
    run_cmd->add_option("--db", ra.db, "SQLite file for the log and snapshot");
    run_cmd->add_option("--export-log", ra.export_log, "write the event log (one JSON object per line)");
    run_cmd->add_option("--config", ra.config, "use this feature document instead of mapping")
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--export-config", ra.export_config, "write the feature document");
    run_cmd->add_option("--export-world", ra.export_world, "write the final world as JSON");
    run_cmd->add_option("--export-roster", ra.export_roster, "write the agent roster as JSON");
    run_cmd->add_option("--minutes-per-tick", ra.minutes_per_tick, "simulated minutes per tick")
        ->check(CLI::Range(1, kMinutesPerDay));
    run_cmd->add_option("--parallelism", ra.parallelism, "concurrent roster generations")->check(CLI::Range(1, 64));

    std::string log_path;
    auto* replay_cmd = app.add_subcommand("replay", "rebuild the world from a log");
    replay_cmd->add_option("--log", log_path, "event log")->required()->check(CLI::ExistingFile);

    auto* metrics_cmd = app.add_subcommand("metrics", "audit a log and print counts");
    metrics_cmd->add_option("--log", log_path, "event log")->required()->check(CLI::ExistingFile);

    std::string config_path;
    auto* validate_cmd = app.add_subcommand("validate-config", "check a feature document");
    validate_cmd->add_option("--config", config_path, "feature document")->required()->check(CLI::ExistingFile);

    std::string host = "127.0.0.1";
    int port = 8080;
    int tick_ms = 2000;
    std::string serve_provider = "stub";
    std::string db_dir;
    auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--tick-ms", tick_ms, "wall-clock milliseconds per tick")->check(CLI::Range(1, 3600000));
    serve_cmd->add_option("--provider", serve_provider)->check(CLI::IsMember({"stub", "remote"}));
    serve_cmd->add_option("--db-dir", db_dir, "directory for per-simulation SQLite files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            return run(ra);
        }
        if (*replay_cmd) {
            return replay(log_path);
        }
        if (*metrics_cmd) {
            return metrics(log_path);
        }
        if (*validate_cmd) {
            return validate(config_path);
        }
        if (*serve_cmd) {
            return serve(host, port, tick_ms, serve_provider, db_dir);
        }
    } catch (const Error& e) {
        std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
