#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include <httplib.h>

#include "metaspace/errors.hpp"
#include "metaspace/gateway.hpp"
#include "metaspace/remote_provider.hpp"
#include "metaspace/stub_provider.hpp"
#include "metaspace/text_metrics.hpp"
#include "metaspace/utf8.hpp"
#include "support.hpp"

using namespace metaspace;
using metaspace::fixtures::ScriptedProvider;

TEST(Prompts, LibraryIsCompleteAndNamed)
{
    EXPECT_EQ(all_prompts().size(), kPromptCount);
    for (const auto& p : all_prompts()) {
        ASSERT_NE(find_prompt(p.name), nullptr) << p.name;
        EXPECT_EQ(find_prompt(p.name)->id, p.id);
        const auto slots = placeholders_in(p.body);
        EXPECT_EQ(std::set<std::string>(slots.begin(), slots.end()), p.required) << p.name;
    }
    EXPECT_EQ(find_prompt("nope"), nullptr);
    EXPECT_TRUE(prompt(PromptId::ChatDyadic).required.contains("user_id"));
    EXPECT_TRUE(prompt(PromptId::ChatGroup).required.contains("people.length"));
    EXPECT_TRUE(prompt(PromptId::Comment).required.contains("sel_post.content"));
    EXPECT_TRUE(prompt(PromptId::MetaphorConversion).required.contains("metaphorKeyword"));
}

TEST(Prompts, Substitution)
{
    Bindings b;
    b["user_id"] = std::string("agent_7");
    EXPECT_EQ(substitute(std::string_view("Your user_id is ${user_id}."), b), "Your user_id is agent_7.");
    try {
        substitute(std::string_view("Your user_id is ${user_id}."), Bindings{});
        FAIL();
    } catch (const PromptError& e) {
        EXPECT_EQ(e.code(), "UnboundPlaceholder");
        EXPECT_EQ(e.subject(), "user_id");
    }
    EXPECT_EQ(render_binding(std::vector<std::string>{"Reddit", "Discord"}), "Reddit, Discord");
}

TEST(Prompts, ValuesAreNotReexpanded)
{
    Bindings b;
    b["a"] = std::string("${b}");
    b["b"] = std::string("oops");
    const std::string out = substitute(std::string_view("x ${a} y"), b);
    EXPECT_EQ(out.find("oops"), std::string::npos);
}

TEST(Constraints, CountsAndPrefixes)
{
    EXPECT_EQ(count_words("one two  three"), 3u);
    EXPECT_EQ(count_sentences("Hi there. How are you? Fine!"), 3u);
    EXPECT_TRUE(starts_with_word("Just arrived", "JUST"));
    EXPECT_FALSE(starts_with_word("Justice wins", "JUST"));
    GenerationConstraints c;
    c.max_chars = 5;
    EXPECT_TRUE(satisfies(c, "short"));
    EXPECT_FALSE(satisfies(c, "longer"));
}

namespace {

Bindings post_bindings()
{
    Bindings b;
    b["platforms"] = std::vector<std::string>{"Reddit", "Discord"};
    b["tone"] = std::string("warm");
    b["user_roles"] = std::string("Entertainer");
    b["last_posts"] = std::string("(none)");
    b["descr.llm_descr.ActorType"] = std::string("neighbors");
    b["descr.llm_descr.CommunicationFlow"] = std::string("chatter");
    b["descr.llm_descr.ContentOrientation"] = std::string("food");
    b["user_interests"] = std::vector<std::string>{"Food", "Music", "Travel"};
    return b;
}

} // namespace

TEST(Stub, DeterministicAndWithinLimits)
{
    Gateway g(std::make_shared<StubProvider>());
    const auto b = post_bindings();
    const auto c = post_constraints();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto a = g.generate(PromptId::PostPersonal, b, seed, c);
        EXPECT_EQ(a, g.generate(PromptId::PostPersonal, b, seed, c));
        EXPECT_LE(utf8::length(a), c.max_chars);
        for (const auto& w : forbidden_post_openers()) {
            EXPECT_FALSE(starts_with_word(a, w)) << a;
        }
    }
    GenerationConstraints tight;
    tight.max_chars = 150;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        EXPECT_LE(utf8::length(g.generate(PromptId::PostPersonal, b, seed, tight)), 150u);
    }
    EXPECT_EQ(g.calls(), 0u); // the stub is not metered
}

TEST(Gateway, CheckedGenerationAttempts)
{
    const auto b = post_bindings();
    GenerationConstraints none;
    {
        Gateway g(std::make_shared<StubProvider>());
        const auto r = g.generate_checked(PromptId::PostPersonal, b, none, {}, 1);
        EXPECT_EQ(r.attempts, 1);
        EXPECT_TRUE(r.text.has_value());
    }
    {
        Gateway g(std::make_shared<StubProvider>());
        const auto r = g.generate_checked(PromptId::PostPersonal, b, none, [](std::string_view) { return false; }, 1,
                                          3);
        EXPECT_EQ(r.attempts, 3);
        EXPECT_FALSE(r.text.has_value());
    }
    {
        auto scripted = std::make_shared<ScriptedProvider>(
            std::deque<std::string>{"lantern river ember tide", "copper meadow signal harbor"});
        Gateway g(scripted);
        const std::vector<std::string> history{"lantern river ember tide"};
        const auto r = g.generate_checked(
            PromptId::PostPersonal, b, none,
            [&](std::string_view t) { return passes_post_constraints(t, history); }, 1);
        EXPECT_EQ(r.attempts, 2);
        EXPECT_EQ(r.text, "copper meadow signal harbor");
    }
}

TEST(Gateway, BudgetFallsBackToStub)
{
    auto scripted = std::make_shared<ScriptedProvider>(std::deque<std::string>{"one", "two", "three", "four"});
    Gateway g(scripted, Budget{2, 0}, std::make_shared<StubProvider>());
    const auto b = post_bindings();
    EXPECT_EQ(g.generate(PromptId::PostPersonal, b, 1), "one");
    EXPECT_EQ(g.generate(PromptId::PostPersonal, b, 2), "two");
    const auto third = g.generate(PromptId::PostPersonal, b, 3);
    EXPECT_NE(third, "three");
    EXPECT_TRUE(g.degraded());
    EXPECT_EQ(scripted->calls(), 2);

    Gateway strict(std::make_shared<ScriptedProvider>(std::deque<std::string>{}), Budget{1, 0});
    strict.generate(PromptId::PostPersonal, b, 1);
    EXPECT_THROW(strict.generate(PromptId::PostPersonal, b, 2), ProviderError);
}

TEST(Gateway, AgentPromptCarriesSystemPart)
{
    struct Capture final : Provider
    {
        std::string system;
        std::string complete(const GenerationRequest& r) override
        {
            system = r.system;
            return "{}";
        }
        std::string_view name() const override { return "capture"; }
    };
    auto cap = std::make_shared<Capture>();
    Gateway g(cap);
    Bindings b;
    for (const auto& key : prompt(PromptId::AgentUser).required) {
        b[key] = std::string("x");
    }
    for (const auto& key : prompt(PromptId::AgentSystem).required) {
        b[key] = std::string("x");
    }
    g.generate(PromptId::AgentUser, b, 1);
    EXPECT_FALSE(cap->system.empty());
}

TEST(Stub, ChannelIdentity)
{
    MetaphorAttributes a{"calm", "a", "b", "c", "d", "e", "f", "g"};
    const auto x = generate_channel_identity("Music", a, 1);
    EXPECT_FALSE(x.name.empty());
    EXPECT_FALSE(x.bio.empty());
    EXPECT_EQ(x.name, generate_channel_identity("Music", a, 1).name);
}

// Mock chat-completions endpoint.
class RemoteProviderTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        m_server.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            ++m_hits;
            m_last_auth = req.get_header_value("Authorization");
            m_last_body = nlohmann::json::parse(req.body);
            if (m_fail_first > 0) {
                --m_fail_first;
                res.status = 503;
                return;
            }
            if (m_reject) {
                res.status = 400;
                res.set_content("bad", "text/plain");
                return;
            }
            nlohmann::json out = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "hello there"}}}}}}};
            res.set_content(out.dump(), "application/json");
        });
        m_port = m_server.bind_to_any_port("127.0.0.1");
        m_thread = std::thread([this] { m_server.listen_after_bind(); });
        m_server.wait_until_ready();
    }
    void TearDown() override
    {
        m_server.stop();
        m_thread.join();
    }

    RemoteConfig config() const
    {
        RemoteConfig c;
        c.base_url = "http://127.0.0.1:" + std::to_string(m_port) + "/v1/";
        c.model = "test-model";
        c.api_key = "k123";
        c.timeout = std::chrono::milliseconds(2000);
        return c;
    }

    GenerationRequest request()
    {
        m_bindings["x"] = std::string("y");
        GenerationRequest r;
        r.prompt = PromptId::Comment;
        r.system = "sys";
        r.user = "usr";
        r.bindings = &m_bindings;
        r.seed = 42;
        return r;
    }

    httplib::Server m_server;
    std::thread m_thread;
    int m_port = 0;
    std::atomic<int> m_hits{0};
    int m_fail_first = 0;
    bool m_reject = false;
    std::string m_last_auth;
    nlohmann::json m_last_body;
    Bindings m_bindings;
};

TEST_F(RemoteProviderTest, SendsChatRequestAndReadsContent)
{
    RemoteProvider p(config());
    EXPECT_EQ(p.complete(request()), "hello there");
    EXPECT_EQ(m_last_auth, "Bearer k123");
    EXPECT_EQ(m_last_body["model"], "test-model");
    ASSERT_EQ(m_last_body["messages"].size(), 2u);
    EXPECT_EQ(m_last_body["messages"][0]["role"], "system");
    EXPECT_EQ(m_last_body["messages"][1]["content"], "usr");
    EXPECT_EQ(m_last_body["seed"], 42);
}

TEST_F(RemoteProviderTest, RetriesTransientFailures)
{
    m_fail_first = 2;
    RemoteProvider p(config());
    EXPECT_EQ(p.complete(request()), "hello there");
    EXPECT_EQ(m_hits.load(), 3);
}

TEST_F(RemoteProviderTest, ClientErrorsAreNotRetried)
{
    m_reject = true;
    RemoteProvider p(config());
    EXPECT_THROW(p.complete(request()), ProviderError);
    EXPECT_EQ(m_hits.load(), 1);
}

TEST(RemoteProvider, UnreachableHostTimesOut)
{
    RemoteConfig c;
    c.base_url = "http://127.0.0.1:1/v1";
    c.model = "m";
    c.retries = 1;
    c.timeout = std::chrono::milliseconds(300);
    RemoteProvider p(c);
    GenerationRequest r;
    r.user = "hi";
    try {
        p.complete(r);
        FAIL();
    } catch (const ProviderError& e) {
        EXPECT_EQ(e.code(), "ProviderTimeout");
    }
    c.base_url = "no-scheme";
    EXPECT_THROW(RemoteProvider{c}, ProviderError);
}
