#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include <httplib.h>

#include "metaspace/errors.hpp"
#include "metaspace/service.hpp"
#include "metaspace/store.hpp"
#include "support.hpp"

using namespace metaspace;
using namespace std::chrono_literals;
using nlohmann::json;

namespace {

ServiceOptions fast_options()
{
    ServiceOptions o;
    o.tick_interval = 15ms;
    o.parallelism = 1;
    return o;
}

CreateRequest request_with(const PlatformConfig& config, std::uint64_t seed = 4)
{
    CreateRequest r;
    r.metaphor = "a lantern-lit night market";
    r.seed = seed;
    r.config = config;
    return r;
}

void wait_ticks(const SimulationService& s, const std::string& id, std::uint64_t ticks)
{
    for (int i = 0; i < 2000 && s.status(id)["tick"].get<std::uint64_t>() < ticks; ++i) {
        std::this_thread::sleep_for(5ms);
    }
}

std::string error_code(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "none";
}

} // namespace

TEST(Service, PhasesAndStop)
{
    SimulationService s(fast_options());
    const auto id = s.create(request_with(fixtures::base_config(6)));
    ASSERT_TRUE(s.wait_for_phase(id, Phase::Running, 10s));
    wait_ticks(s, id, 3);
    const auto st = s.status(id);
    EXPECT_EQ(st["phase"], "Running");
    EXPECT_EQ(st["members"], 6);
    EXPECT_TRUE(st["template"].get<std::string>().starts_with("In a space that feels"));
    s.stop(id);
    EXPECT_EQ(s.phase(id), Phase::Stopped);
    EXPECT_EQ(error_code([&] { s.inject(id, "me", EventKind::AddPost, {{"text", "late"}}); }), "NotRunning");
}

TEST(Service, RejectsBadRequests)
{
    SimulationService s(fast_options());
    CreateRequest r;
    r.metaphor = " ";
    EXPECT_THROW(s.create(r), AttributeError);
    EXPECT_EQ(error_code([&] { s.status("sim-999"); }), "UnknownSimulation");
}

TEST(Service, MaxTicksStopsOnItsOwn)
{
    SimulationService s(fast_options());
    auto r = request_with(fixtures::base_config(5));
    r.max_ticks = 4;
    const auto id = s.create(r);
    bool finished = false;
    std::uint64_t next = 0;
    for (int i = 0; i < 500 && !finished; ++i) {
        for (const auto& e : s.events(id, next, 100ms, &finished)) {
            EXPECT_EQ(e.seq, next);
            next = e.seq + 1;
        }
    }
    EXPECT_TRUE(finished);
    EXPECT_EQ(s.phase(id), Phase::Stopped);
    EXPECT_EQ(s.status(id)["tick"], 4);
}

TEST(Service, HumanActions)
{
    SimulationService s(fast_options());
    const auto id = s.create(request_with(fixtures::base_config(6)));
    ASSERT_TRUE(s.wait_for_phase(id, Phase::Running, 10s));

    const SimEvent e = s.inject(id, "visitor", EventKind::AddPost, {{"text", "hello from the stall"}});
    EXPECT_EQ(e.kind, EventKind::AddPost);
    const auto post = std::get<PostPayload>(e.payload).id;
    wait_ticks(s, id, e.tick);
    const auto feed = s.feed(id, "visitor");
    bool seen = false;
    for (const auto& p : feed["posts"]) {
        seen = seen || (p["id"] == post && p["text"] == "hello from the stall");
    }
    EXPECT_TRUE(seen);

    EXPECT_EQ(error_code([&] { s.inject(id, "visitor", EventKind::React, {{"post", post}, {"token", "meh"}}); }),
              "InvalidPayload");
    EXPECT_EQ(error_code([&] { s.inject(id, "visitor", EventKind::React, {{"text", 1}}); }), "InvalidPayload");
    EXPECT_EQ(error_code([&] { s.inject(id, "visitor", EventKind::Genesis, json::object()); }), "InvalidPayload");
    EXPECT_EQ(error_code([&] { s.inject(id, "visitor", EventKind::CreateChannel, {{"name", "night"}}); }),
              "InfeasibleAction");
    EXPECT_EQ(error_code([&] { s.inject(id, "visitor", EventKind::React, {{"post", 9999}, {"token", "like"}}); }),
              "InvariantViolation");
    EXPECT_EQ(error_code([&] { s.feed(id, "nobody"); }), "UnknownViewer");
}

TEST(Service, ContentManagementGate)
{
    auto c = fixtures::base_config(5);
    c.content_management = {};
    SimulationService s(fast_options());
    const auto id = s.create(request_with(c));
    ASSERT_TRUE(s.wait_for_phase(id, Phase::Running, 10s));
    EXPECT_EQ(error_code([&] { s.inject(id, "v", EventKind::DeletePost, {{"post", 0}}); }), "InfeasibleAction");
}

TEST(Service, FeedMatchesWorldVisibility)
{
    SimulationService s(fast_options());
    const auto id = s.create(request_with(fixtures::base_config(6), 9));
    ASSERT_TRUE(s.wait_for_phase(id, Phase::Running, 10s));
    wait_ticks(s, id, 30);
    s.stop(id);
    std::vector<SimEvent> log = s.events(id, 0, 0ms);
    const World w = restore(log);
    const auto tick = s.status(id)["tick"].get<std::uint64_t>();
    for (ActorId v = 0; v < 6; ++v) {
        const auto feed = s.feed(id, std::to_string(v));
        const auto expected = visible_posts(w, v, tick);
        ASSERT_EQ(feed["posts"].size(), expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            EXPECT_EQ(feed["posts"][i]["id"], expected[i]->id);
        }
    }
}

TEST(Service, ProfileMasking)
{
    for (Identity mode : {Identity::RealName, Identity::Pseudonymous, Identity::Anonymous}) {
        auto c = fixtures::base_config(5);
        c.identity = mode;
        SimulationService s(fast_options());
        const auto id = s.create(request_with(c));
        ASSERT_TRUE(s.wait_for_phase(id, Phase::Running, 10s));
        const auto p = s.profile(id, "0");
        EXPECT_FALSE(p.contains("password"));
        switch (mode) {
        case Identity::RealName:
            EXPECT_TRUE(p.contains("persona_name") || p.contains("interests"));
            break;
        case Identity::Pseudonymous:
            EXPECT_EQ(p.size(), 2u);
            EXPECT_TRUE(p.contains("user_name"));
            break;
        case Identity::Anonymous:
            EXPECT_EQ(p["identity"], "Anonymous");
            break;
        }
        s.shutdown();
    }
}

TEST(Service, PersistsToStore)
{
    const auto dir = std::filesystem::temp_directory_path() / "metaspace_service_db";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto o = fast_options();
    o.db_dir = dir.string();
    std::vector<SimEvent> log;
    std::string id;
    {
        SimulationService s(o);
        auto r = request_with(fixtures::base_config(5));
        r.max_ticks = 6;
        id = s.create(r);
        bool finished = false;
        for (int i = 0; i < 500 && !finished; ++i) {
            s.events(id, 1u << 30, 50ms, &finished);
        }
        log = s.events(id, 0, 0ms);
    }
    Store store((dir / (id + ".db")).string());
    EXPECT_EQ(store.load_events(), log);
    EXPECT_TRUE(store.meta("snapshot_seq").has_value());
    std::filesystem::remove_all(dir);
}

class HttpTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        m_service = std::make_unique<SimulationService>(fast_options());
        m_server = std::make_unique<HttpServer>(*m_service);
        m_port = m_server->bind("127.0.0.1", 0);
        m_thread = std::thread([this] { m_server->serve(); });
    }
    void TearDown() override
    {
        m_server->stop();
        m_thread.join();
        m_service->shutdown();
    }
    httplib::Client client() const
    {
        httplib::Client c("127.0.0.1", m_port);
        c.set_read_timeout(10, 0);
        return c;
    }
    std::string create(std::uint64_t max_ticks = 0)
    {
        json body = {{"metaphor", "a quiet library reading room"},
                     {"seed", 3},
                     {"tick_interval_ms", 15},
                     {"config", format_config(fixtures::base_config(5))}};
        if (max_ticks) {
            body["max_ticks"] = max_ticks;
        }
        auto res = client().Post("/simulations", body.dump(), "application/json");
        EXPECT_TRUE(res);
        EXPECT_EQ(res->status, 201);
        const auto id = json::parse(res->body)["id"].get<std::string>();
        EXPECT_TRUE(m_service->wait_for_phase(id, Phase::Running, 10s));
        return id;
    }

    std::unique_ptr<SimulationService> m_service;
    std::unique_ptr<HttpServer> m_server;
    std::thread m_thread;
    int m_port = 0;
};

TEST_F(HttpTest, StatusCodes)
{
    auto c = client();
    EXPECT_EQ(c.Get("/health")->status, 200);
    EXPECT_EQ(c.Get("/simulations/nope")->status, 404);
    EXPECT_EQ(c.Post("/simulations", "{\"metaphor\":\"\"}", "application/json")->status, 400);
    EXPECT_EQ(c.Post("/simulations", "not json", "application/json")->status, 400);

    const auto id = create();
    const auto base = "/simulations/" + id;
    auto status = c.Get(base);
    ASSERT_EQ(status->status, 200);
    EXPECT_EQ(json::parse(status->body)["phase"], "Running");
    EXPECT_EQ(c.Get(base + "/config")->status, 200);
    EXPECT_EQ(c.Get(base + "/feed?viewer=0")->status, 200);
    EXPECT_EQ(c.Get(base + "/feed")->status, 400);
    EXPECT_EQ(c.Get(base + "/feed?viewer=ghost")->status, 404);
    EXPECT_EQ(c.Get(base + "/channels")->status, 200);
    EXPECT_EQ(c.Get(base + "/chats/4000")->status, 404);
    EXPECT_EQ(c.Get(base + "/chats/x")->status, 400);
    EXPECT_EQ(c.Get(base + "/profiles/0")->status, 200);

    auto post = c.Post(base + "/actions",
                       json{{"participant", "web"}, {"kind", "AddPost"}, {"payload", {{"text", "hi all"}}}}.dump(),
                       "application/json");
    ASSERT_EQ(post->status, 201);
    EXPECT_EQ(json::parse(post->body)["kind"], "AddPost");
    auto bad = c.Post(base + "/actions", json{{"participant", "web"}, {"kind", "CreateChannel"}, {"payload", {{"name", "x"}}}}.dump(),
                      "application/json");
    EXPECT_EQ(bad->status, 422);
    EXPECT_EQ(json::parse(bad->body)["error"]["code"], "InfeasibleAction");
    EXPECT_EQ(c.Post(base + "/actions", json{{"participant", "web"}, {"kind", "Dance"}}.dump(), "application/json")->status,
              400);

    EXPECT_EQ(c.Post(base + "/stop", "", "application/json")->status, 200);
    auto late = c.Post(base + "/actions",
                       json{{"participant", "web"}, {"kind", "AddPost"}, {"payload", {{"text", "late"}}}}.dump(),
                       "application/json");
    EXPECT_EQ(late->status, 409);
}

namespace {

std::vector<std::uint64_t> read_stream(httplib::Client& c, const std::string& path, const httplib::Headers& headers = {})
{
    std::string buffer;
    auto res = c.Get(path, headers, [&](const char* data, std::size_t n) {
        buffer.append(data, n);
        return true;
    });
    EXPECT_TRUE(res);
    std::vector<std::uint64_t> ids;
    std::size_t pos = 0;
    while ((pos = buffer.find("id: ", pos)) != std::string::npos) {
        if (pos == 0 || buffer[pos - 1] == '\n') {
            ids.push_back(std::stoull(buffer.substr(pos + 4)));
        }
        pos += 4;
    }
    return ids;
}

} // namespace

TEST_F(HttpTest, EventStreamIsGapless)
{
    const auto id = create(8);
    auto c = client();
    const auto all = read_stream(c, "/simulations/" + id + "/events");
    ASSERT_GT(all.size(), 1u);
    for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i], i);
    }
    const auto tail = read_stream(c, "/simulations/" + id + "/events?from=3");
    ASSERT_EQ(tail.size(), all.size() - 3);
    EXPECT_EQ(tail.front(), 3u);
    const auto resumed = read_stream(c, "/simulations/" + id + "/events", {{"Last-Event-ID", "4"}});
    ASSERT_FALSE(resumed.empty());
    EXPECT_EQ(resumed.front(), 5u);
    EXPECT_EQ(resumed.back(), all.back());
}
