#include "metaspace/service.hpp"

#include <atomic>
#include <condition_variable>
#include <ctime>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include <httplib.h>

#include "metaspace/errors.hpp"
#include "metaspace/store.hpp"
#include "metaspace/stub_provider.hpp"

namespace metaspace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace std::chrono_literals;

namespace {

class WorkerPool
{
public:
    explicit WorkerPool(int n)
    {
        for (int i = 0; i < std::max(1, n); ++i) {
            m_threads.emplace_back([this] { loop(); });
        }
    }
    ~WorkerPool() { close(); }

    void submit(std::function<void()> job)
    {
        {
            std::lock_guard lock(m_mutex);
            m_jobs.push_back(std::move(job));
        }
        m_cv.notify_one();
    }

    void close()
    {
        {
            std::lock_guard lock(m_mutex);
            if (m_closed) {
                return;
            }
            m_closed = true;
        }
        m_cv.notify_all();
        for (auto& t : m_threads) {
            t.join();
        }
    }

private:
    void loop()
    {
        for (;;) {
            std::function<void()> job;
            {
                std::unique_lock lock(m_mutex);
                m_cv.wait(lock, [&] { return m_closed || !m_jobs.empty(); });
                if (m_jobs.empty()) {
                    return;
                }
                job = std::move(m_jobs.front());
                m_jobs.pop_front();
            }
            job();
        }
    }

    std::mutex m_mutex;
    std::condition_variable m_cv;
    std::deque<std::function<void()>> m_jobs;
    std::vector<std::thread> m_threads;
    bool m_closed = false;
};

std::string iso_time(std::chrono::system_clock::time_point t)
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

struct SimulationService::Simulation
{
    std::string id;
    CreateRequest request;
    std::chrono::system_clock::time_point created_at;

    mutable std::mutex mutex;
    mutable std::condition_variable cv;
    Phase phase = Phase::ConvertingMetaphor;
    std::string failure;
    bool finished = false;
    std::vector<SimEvent> events;
    std::shared_ptr<const World> snapshot;
    std::uint64_t tick = 0;

    std::unique_ptr<Gateway> gateway;
    std::unique_ptr<Engine> engine;
    std::unique_ptr<Store> store;
    std::thread ticker;
    std::atomic<bool> stopping{false};

    void set_phase(Phase p, std::string reason = {})
    {
        {
            std::lock_guard lock(mutex);
            phase = p;
            if (!reason.empty()) {
                failure = std::move(reason);
            }
            if (p == Phase::Stopped || p == Phase::Failed) {
                finished = true;
            }
        }
        cv.notify_all();
    }
};

struct SimulationService::Impl
{
    explicit Impl(ServiceOptions o) : options(std::move(o)), pool(options.workers) {}

    ServiceOptions options;
    mutable std::mutex mutex;
    std::map<std::string, std::shared_ptr<Simulation>> sims;
    std::uint64_t counter = 0;
    WorkerPool pool;
    std::atomic<bool> closed{false};
};

SimulationService::SimulationService(ServiceOptions options) : m_impl(std::make_unique<Impl>(std::move(options))) {}

SimulationService::~SimulationService() { shutdown(); }

void SimulationService::shutdown()
{
    if (m_impl->closed.exchange(true)) {
        return;
    }
    std::vector<std::shared_ptr<Simulation>> all;
    {
        std::lock_guard lock(m_impl->mutex);
        for (auto& [id, sim] : m_impl->sims) {
            all.push_back(sim);
        }
    }
    for (auto& sim : all) {
        sim->stopping = true;
        sim->cv.notify_all();
    }
    m_impl->pool.close();
    for (auto& sim : all) {
        if (sim->ticker.joinable()) {
            sim->ticker.join();
        }
    }
}

std::string SimulationService::create(const CreateRequest& request)
{
    SpatialMetaphor::make(request.metaphor);
    if (request.config && !validate_config(*request.config).empty()) {
        throw FeatureError("InvalidConfig", "config", "supplied configuration is invalid");
    }
    if (m_impl->closed) {
        throw ServiceError("ShuttingDown", "", "the service is shutting down");
    }
    auto sim = std::make_shared<Simulation>();
    sim->request = request;
    sim->created_at = std::chrono::system_clock::now();
    {
        std::lock_guard lock(m_impl->mutex);
        sim->id = "sim-" + std::to_string(++m_impl->counter);
        m_impl->sims[sim->id] = sim;
    }
    m_impl->pool.submit([this, sim] { run_pipeline(sim); });
    return sim->id;
}

void SimulationService::run_pipeline(const std::shared_ptr<Simulation>& sim)
{
    try {
        const auto& o = m_impl->options;
        std::shared_ptr<Provider> provider = o.provider ? o.provider() : std::make_shared<StubProvider>();
        std::shared_ptr<Provider> fallback = provider->metered() ? std::make_shared<StubProvider>() : nullptr;
        sim->gateway = std::make_unique<Gateway>(provider, o.budget, fallback);

        PipelineOptions p;
        p.seed = sim->request.seed;
        p.config = sim->request.config;
        p.minutes_per_tick = sim->request.minutes_per_tick;
        p.parallelism = o.parallelism;
        p.on_phase = [&](Phase phase) { sim->set_phase(phase); };
        SimEvent genesis = build_genesis(*sim->gateway, SpatialMetaphor::make(sim->request.metaphor), p);

        EngineOptions eo;
        eo.master_seed = sim->request.seed;
        eo.publish_snapshots = true;
        sim->engine = std::make_unique<Engine>(std::span<const SimEvent>(&genesis, 1), *sim->gateway, eo);
        if (o.db_dir) {
            sim->store = std::make_unique<Store>(*o.db_dir + "/" + sim->id + ".db");
            sim->store->append(std::span<const SimEvent>(&genesis, 1));
        }
        {
            std::lock_guard lock(sim->mutex);
            sim->events.push_back(genesis);
            sim->snapshot = sim->engine->snapshot();
        }
    } catch (const std::exception& e) {
        sim->set_phase(Phase::Failed, e.what());
        return;
    }
    if (sim->stopping) {
        sim->set_phase(Phase::Stopped);
        return;
    }
    sim->set_phase(Phase::Running);
    const auto interval = sim->request.tick_interval.value_or(m_impl->options.tick_interval);
    sim->ticker = std::thread([sim, interval] {
        Phase end = Phase::Stopped;
        std::string reason;
        while (!sim->stopping) {
            {
                std::unique_lock lock(sim->mutex);
                sim->cv.wait_for(lock, interval, [&] { return sim->stopping.load(); });
            }
            if (sim->stopping) {
                break;
            }
            try {
                auto emitted = sim->engine->step();
                if (sim->store) {
                    sim->store->append(emitted);
                }
                std::lock_guard lock(sim->mutex);
                sim->events.insert(sim->events.end(), emitted.begin(), emitted.end());
                sim->snapshot = sim->engine->snapshot();
                sim->tick = sim->engine->clock().tick;
            } catch (const std::exception& e) {
                end = Phase::Failed;
                reason = e.what();
                break;
            }
            sim->cv.notify_all();
            if (sim->request.max_ticks && sim->engine->clock().tick >= *sim->request.max_ticks) {
                break;
            }
        }
        if (sim->store) {
            try {
                sim->store->save_snapshot(sim->engine->world());
            } catch (const std::exception& e) {
                end = Phase::Failed;
                reason = e.what();
            }
        }
        sim->set_phase(end, reason);
    });
}

std::shared_ptr<SimulationService::Simulation> SimulationService::find(const std::string& id) const
{
    std::lock_guard lock(m_impl->mutex);
    auto it = m_impl->sims.find(id);
    if (it == m_impl->sims.end()) {
        throw ServiceError("UnknownSimulation", id, "no simulation with id " + id);
    }
    return it->second;
}

namespace {

std::pair<std::shared_ptr<const World>, std::uint64_t> ready_snapshot(const SimulationService::Simulation& sim)
{
    std::lock_guard lock(sim.mutex);
    if (!sim.snapshot) {
        throw ServiceError("NotReady", sim.id, "the simulation is still being generated");
    }
    return {sim.snapshot, sim.tick};
}

ActorId resolve_member(const World& w, const std::string& name)
{
    if (auto m = w.find_member(name)) {
        return *m;
    }
    if (!name.empty() && name.find_first_not_of("0123456789") == std::string::npos && name.size() < 10) {
        const auto index = static_cast<ActorId>(std::stoul(name));
        if (w.is_member(index)) {
            return index;
        }
    }
    throw WorldError("UnknownViewer", name, "unknown member " + name);
}

std::string display_name(const World& w, ActorId a)
{
    if (w.is_human(a)) {
        return w.members()[a].user_name;
    }
    switch (w.config().identity) {
    case Identity::RealName: return w.roster()[a].persona_name.empty() ? w.members()[a].user_name : w.roster()[a].persona_name;
    case Identity::Pseudonymous: return w.members()[a].user_name;
    case Identity::Anonymous: return "Anonymous";
    }
    return {};
}

ordered_json post_json(const World& w, const Post& p)
{
    ordered_json comments = ordered_json::array();
    for (CommentId id : w.comments_on(p.id)) {
        const Comment& c = w.comments()[id];
        comments.push_back({{"id", c.id},
                            {"author", c.author},
                            {"author_name", display_name(w, c.author)},
                            {"parent", c.parent ? ordered_json(*c.parent) : ordered_json(nullptr)},
                            {"text", c.text},
                            {"tick", c.created_tick}});
    }
    return {{"id", p.id},
            {"author", p.author},
            {"author_name", display_name(w, p.author)},
            {"text", p.text},
            {"channel", p.channel ? ordered_json(*p.channel) : ordered_json(nullptr)},
            {"ephemeral", p.ephemeral},
            {"tick", p.created_tick},
            {"visibility", label(p.visibility)},
            {"reactions", p.reaction_count},
            {"comment_count", p.comment_count},
            {"comments", std::move(comments)}};
}

} // namespace

Phase SimulationService::phase(const std::string& id) const
{
    auto sim = find(id);
    std::lock_guard lock(sim->mutex);
    return sim->phase;
}

ordered_json SimulationService::status(const std::string& id) const
{
    auto sim = find(id);
    std::lock_guard lock(sim->mutex);
    ordered_json j;
    j["id"] = sim->id;
    j["phase"] = phase_name(sim->phase);
    j["failure"] = sim->failure.empty() ? ordered_json(nullptr) : ordered_json(sim->failure);
    j["created_at"] = iso_time(sim->created_at);
    j["seed"] = sim->request.seed;
    j["metaphor"] = sim->request.metaphor;
    j["tick"] = sim->tick;
    j["events"] = sim->events.size();
    if (sim->snapshot) {
        const auto& g = sim->snapshot->genesis();
        j["attributes"] = to_json(g.attrs);
        j["template"] = render_template(g.attrs);
        j["config"] = format_config(g.config);
        j["members"] = sim->snapshot->members().size();
    }
    return j;
}

ordered_json SimulationService::config(const std::string& id) const
{
    auto [w, tick] = ready_snapshot(*find(id));
    ordered_json actions = ordered_json::array();
    for (ActionKind k : w->feasible().values()) {
        actions.push_back(action_name(k));
    }
    return {{"document", format_config(w->config())},
            {"rationale", w->genesis().rationale},
            {"feasible_actions", std::move(actions)},
            {"reaction_tokens", reaction_tokens(w->config().reactions)},
            {"minutes_per_tick", w->genesis().minutes_per_tick}};
}

ordered_json SimulationService::feed(const std::string& id, const std::string& viewer) const
{
    auto [w, tick] = ready_snapshot(*find(id));
    const ActorId v = resolve_member(*w, viewer);
    ordered_json out = ordered_json::array();
    for (const Post* p : visible_posts(*w, v, tick)) {
        out.push_back(post_json(*w, *p));
    }
    return {{"viewer", v}, {"tick", tick}, {"posts", std::move(out)}};
}

ordered_json SimulationService::channels(const std::string& id) const
{
    auto [w, tick] = ready_snapshot(*find(id));
    ordered_json out = ordered_json::array();
    for (const auto& c : w->channels()) {
        out.push_back({{"id", c.id}, {"name", c.name}, {"bio", c.bio}, {"creator", c.creator}, {"members", c.members}});
    }
    return out;
}

ordered_json SimulationService::chat(const std::string& id, ChatId chat) const
{
    auto [w, tick] = ready_snapshot(*find(id));
    if (chat >= w->chats().size()) {
        throw WorldError("UnknownChat", std::to_string(chat), "no chat " + std::to_string(chat));
    }
    const Chat& c = w->chats()[chat];
    ordered_json messages = ordered_json::array();
    for (MessageId m : c.messages) {
        const Message& msg = w->messages()[m];
        messages.push_back({{"id", msg.id},
                            {"sender", msg.sender},
                            {"sender_name", display_name(*w, msg.sender)},
                            {"text", msg.text},
                            {"tick", msg.created_tick},
                            {"read_by", msg.read_by},
                            {"off_topic", msg.off_topic}});
    }
    return {{"id", c.id}, {"group", c.group}, {"participants", c.participants}, {"messages", std::move(messages)}};
}

ordered_json SimulationService::profile(const std::string& id, const std::string& member) const
{
    auto [w, tick] = ready_snapshot(*find(id));
    const ActorId a = resolve_member(*w, member);
    if (w->is_human(a)) {
        return {{"id", a}, {"user_name", w->members()[a].user_name}, {"human", true}};
    }
    const AgentProfile& p = w->roster()[a];
    switch (w->config().identity) {
    case Identity::RealName: {
        ordered_json full = to_json(p);
        full.erase("password");
        full["id"] = a;
        return full;
    }
    case Identity::Pseudonymous: return {{"id", a}, {"user_name", p.user_name}};
    case Identity::Anonymous: return {{"id", a}, {"identity", "Anonymous"}};
    }
    return {};
}

SimEvent SimulationService::inject(const std::string& id, const std::string& participant, EventKind kind,
                                   const json& payload)
{
    auto sim = find(id);
    Engine* engine = nullptr;
    std::chrono::milliseconds interval{};
    {
        std::lock_guard lock(sim->mutex);
        if (sim->phase != Phase::Running) {
            throw ServiceError("NotRunning", id, std::string("simulation is ") + std::string(phase_name(sim->phase)));
        }
        engine = sim->engine.get();
        interval = sim->request.tick_interval.value_or(m_impl->options.tick_interval);
    }
    if (participant.empty()) {
        throw ServiceError("InvalidPayload", "participant", "participant id is required");
    }
    auto [w, tick] = ready_snapshot(*sim);
    const PlatformConfig& cfg = w->config();
    if (kind == EventKind::Genesis || kind == EventKind::RegisterParticipant) {
        throw ServiceError("InvalidPayload", "kind", "humans cannot issue this event kind");
    }
    if (auto action = as_action(kind); action && !w->feasible().contains(*action)) {
        throw ServiceError("InfeasibleAction", std::string(event_kind_name(kind)), "this space does not offer that action");
    }
    if ((kind == EventKind::EditPost && !cfg.content_management.contains(ContentManagement::Edit)) ||
        (kind == EventKind::DeletePost && !cfg.content_management.contains(ContentManagement::Delete))) {
        throw ServiceError("InfeasibleAction", std::string(event_kind_name(kind)), "content management is not offered");
    }
    Payload parsed;
    try {
        parsed = payload_from_json(kind, payload);
    } catch (const PersistenceError& e) {
        throw ServiceError("InvalidPayload", "payload", e.what());
    }
    if (const auto* r = std::get_if<ReactPayload>(&parsed); r && !reaction_allowed(cfg.reactions, r->token)) {
        throw ServiceError("InvalidPayload", "token", "reaction '" + r->token + "' is not offered");
    }
    auto future = engine->submit({participant, kind, std::move(parsed)});
    if (future.wait_for(interval * 3 + 5s) != std::future_status::ready) {
        throw ServiceError("Timeout", id, "the action was not applied in time");
    }
    try {
        return future.get();
    } catch (const std::future_error&) {
        throw ServiceError("NotRunning", id, "the simulation stopped before applying the action");
    }
}

void SimulationService::stop(const std::string& id)
{
    auto sim = find(id);
    sim->stopping = true;
    sim->cv.notify_all();
    if (sim->ticker.joinable() && sim->ticker.get_id() != std::this_thread::get_id()) {
        sim->ticker.join();
    }
}

std::vector<SimEvent> SimulationService::events(const std::string& id, std::uint64_t from,
                                                std::chrono::milliseconds wait, bool* finished) const
{
    auto sim = find(id);
    std::unique_lock lock(sim->mutex);
    sim->cv.wait_for(lock, wait, [&] { return sim->events.size() > from || sim->finished || m_impl->closed; });
    std::vector<SimEvent> out;
    if (from < sim->events.size()) {
        out.assign(sim->events.begin() + static_cast<std::ptrdiff_t>(from), sim->events.end());
    }
    if (finished) {
        *finished = (sim->finished || m_impl->closed.load()) && out.empty();
    }
    return out;
}

bool SimulationService::wait_for_phase(const std::string& id, Phase target, std::chrono::milliseconds timeout) const
{
    auto sim = find(id);
    std::unique_lock lock(sim->mutex);
    return sim->cv.wait_for(lock, timeout, [&] { return sim->phase == target || sim->finished; }) &&
           sim->phase == target;
}

// ---------------------------------------------------------------------------

struct HttpServer::Impl
{
    explicit Impl(SimulationService& s) : service(s) {}

    SimulationService& service;
    httplib::Server server;
    int port = -1;
};

namespace {

int status_for(const std::string& code)
{
    static const std::map<std::string, int> table = {
        {"UnknownSimulation", 404}, {"UnknownViewer", 404},    {"UnknownChat", 404},      {"NotFound", 404},
        {"InfeasibleAction", 422},  {"InvariantViolation", 422}, {"InvalidCommand", 422}, {"NotRunning", 409},
        {"NotReady", 409},          {"Timeout", 504},          {"ShuttingDown", 503},
    };
    auto it = table.find(code);
    return it != table.end() ? it->second : 400;
}

void send_json(httplib::Response& res, const ordered_json& body, int status = 200)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message)
{
    send_json(res, {{"error", {{"code", code}, {"message", message}}}}, status);
}

template <typename F>
httplib::Server::Handler guarded(F f)
{
    return [f](const httplib::Request& req, httplib::Response& res) {
        try {
            f(req, res);
        } catch (const Error& e) {
            send_error(res, status_for(e.code()), e.code(), e.what());
        } catch (const json::exception& e) {
            send_error(res, 400, "InvalidJson", e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "Internal", e.what());
        }
    };
}

json body_json(const httplib::Request& req)
{
    json j = json::parse(req.body.empty() ? std::string("{}") : req.body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ServiceError("InvalidJson", "body", "request body must be a JSON object");
    }
    return j;
}

std::uint64_t parse_u64(const std::string& s, const char* field)
{
    if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos) {
        throw ServiceError("InvalidPayload", field, std::string(field) + " must be a non-negative integer");
    }
    return std::stoull(s);
}

} // namespace

HttpServer::HttpServer(SimulationService& service) : m_impl(std::make_unique<Impl>(service))
{
    auto& svc = m_impl->service;
    auto& srv = m_impl->server;

    srv.Get("/health", [](const httplib::Request&, httplib::Response& res) { send_json(res, {{"ok", true}}); });

    srv.Post("/simulations", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        json body = body_json(req);
        CreateRequest r;
        r.metaphor = body.value("metaphor", "");
        r.seed = body.value("seed", std::uint64_t{0});
        r.minutes_per_tick = body.value("minutes_per_tick", 5);
        if (auto c = body.find("config"); c != body.end() && c->is_string()) {
            r.config = parse_feature_response(c->get<std::string>()).config;
        }
        if (auto t = body.find("tick_interval_ms"); t != body.end()) {
            r.tick_interval = std::chrono::milliseconds(t->get<std::int64_t>());
        }
        if (auto m = body.find("max_ticks"); m != body.end()) {
            r.max_ticks = m->get<std::uint64_t>();
        }
        const std::string id = svc.create(r);
        send_json(res, svc.status(id), 201);
    }));

    srv.Get(R"(/simulations/([^/]+))", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        send_json(res, svc.status(req.matches[1]));
    }));
    srv.Get(R"(/simulations/([^/]+)/config)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        send_json(res, svc.config(req.matches[1]));
    }));
    srv.Get(R"(/simulations/([^/]+)/feed)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("viewer")) {
            throw ServiceError("InvalidPayload", "viewer", "viewer is required");
        }
        send_json(res, svc.feed(req.matches[1], req.get_param_value("viewer")));
    }));
    srv.Get(R"(/simulations/([^/]+)/channels)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        send_json(res, svc.channels(req.matches[1]));
    }));
    srv.Get(R"(/simulations/([^/]+)/chats/([^/]+))",
            guarded([&svc](const httplib::Request& req, httplib::Response& res) {
                send_json(res, svc.chat(req.matches[1], static_cast<ChatId>(parse_u64(req.matches[2], "chat"))));
            }));
    srv.Get(R"(/simulations/([^/]+)/profiles/([^/]+))",
            guarded([&svc](const httplib::Request& req, httplib::Response& res) {
                send_json(res, svc.profile(req.matches[1], req.matches[2]));
            }));
    srv.Post(R"(/simulations/([^/]+)/actions)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        json body = body_json(req);
        auto kind = parse_event_kind(body.value("kind", ""));
        if (!kind) {
            throw ServiceError("InvalidPayload", "kind", "unknown action kind");
        }
        SimEvent e = svc.inject(req.matches[1], body.value("participant", ""), *kind,
                                body.value("payload", json::object()));
        send_json(res, to_json(e), 201);
    }));
    srv.Post(R"(/simulations/([^/]+)/stop)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        svc.stop(req.matches[1]);
        send_json(res, svc.status(req.matches[1]));
    }));
    srv.Get(R"(/simulations/([^/]+)/events)", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
        const std::string id = req.matches[1];
        svc.phase(id);
        std::uint64_t from = req.has_param("from") ? parse_u64(req.get_param_value("from"), "from") : 0;
        if (req.has_header("Last-Event-ID")) {
            from = std::max(from, parse_u64(req.get_header_value("Last-Event-ID"), "Last-Event-ID") + 1);
        }
        auto next = std::make_shared<std::uint64_t>(from);
        res.set_header("Cache-Control", "no-cache");
        res.set_chunked_content_provider("text/event-stream", [&svc, id, next](std::size_t, httplib::DataSink& sink) {
            bool finished = false;
            std::vector<SimEvent> batch;
            try {
                batch = svc.events(id, *next, 1000ms, &finished);
            } catch (const Error&) {
                return false;
            }
            for (const auto& e : batch) {
                const std::string frame = "id: " + std::to_string(e.seq) + "\nevent: " +
                                          std::string(event_kind_name(e.kind)) + "\ndata: " + to_line(e) + "\n\n";
                if (!sink.write(frame.data(), frame.size())) {
                    return false;
                }
                *next = e.seq + 1;
            }
            if (finished) {
                sink.done();
                return true;
            }
            if (batch.empty()) {
                static constexpr char kPing[] = ": ping\n\n";
                return sink.write(kPing, sizeof kPing - 1);
            }
            return true;
        });
    }));
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0) {
        m_impl->port = m_impl->server.bind_to_any_port(host);
    } else {
        m_impl->port = m_impl->server.bind_to_port(host, port) ? port : -1;
    }
    if (m_impl->port < 0) {
        throw ServiceError("BindFailed", host, "cannot bind " + host + ":" + std::to_string(port));
    }
    return m_impl->port;
}

void HttpServer::serve() { m_impl->server.listen_after_bind(); }

void HttpServer::stop() { m_impl->server.stop(); }

} // namespace metaspace
