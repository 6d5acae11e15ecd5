#include "metaspace/remote_provider.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "metaspace/errors.hpp"

namespace metaspace {

namespace {

std::string env_or_empty(const char* key)
{
    const char* v = std::getenv(key);
    return v ? std::string(v) : std::string();
}

} // namespace

RemoteConfig RemoteConfig::from_env()
{
    RemoteConfig c;
    c.base_url = env_or_empty("GATEWAY_BASE_URL");
    c.model = env_or_empty("GATEWAY_MODEL");
    c.api_key = env_or_empty("GATEWAY_API_KEY");
    if (c.base_url.empty() || c.model.empty()) {
        throw ProviderError("ProviderRejected", "GATEWAY_BASE_URL",
                            "remote provider needs GATEWAY_BASE_URL and GATEWAY_MODEL");
    }
    return c;
}

RemoteProvider::RemoteProvider(RemoteConfig config) : m_config(std::move(config))
{
    const auto scheme_end = m_config.base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ProviderError("ProviderRejected", "base_url", "base URL lacks a scheme: " + m_config.base_url);
    }
    const auto path_start = m_config.base_url.find('/', scheme_end + 3);
    m_origin = m_config.base_url.substr(0, path_start);
    m_path = path_start == std::string::npos ? std::string() : m_config.base_url.substr(path_start);
    while (!m_path.empty() && m_path.back() == '/') {
        m_path.pop_back();
    }
}

std::string RemoteProvider::complete(const GenerationRequest& request)
{
    nlohmann::json messages = nlohmann::json::array();
    if (!request.system.empty()) {
        messages.push_back({{"role", "system"}, {"content", request.system}});
    }
    messages.push_back({{"role", "user"}, {"content", request.user}});
    nlohmann::json body = {
        {"model", m_config.model},
        {"messages", messages},
        {"temperature", m_config.temperature},
        {"seed", request.seed & 0x7FFFFFFF},
    };
    const std::string payload = body.dump();

    httplib::Client client(m_origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(m_config.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(m_config.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!m_config.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + m_config.api_key);
    }

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= m_config.retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
        }
        auto res = client.Post(m_path + "/chat/completions", headers, payload, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "status " + std::to_string(res->status);
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            throw ProviderError("ProviderRejected", std::to_string(res->status),
                                "provider returned status " + std::to_string(res->status) + ": " + res->body);
        }
        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        try {
            if (!parsed.is_discarded()) {
                return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
            }
        } catch (const nlohmann::json::exception&) {
        }
        throw ProviderError("ProviderRejected", "body", "provider response has no choices[0].message.content");
    }
    throw ProviderError("ProviderTimeout", m_origin, "provider unreachable after retries: " + last_error);
}

} // namespace metaspace
