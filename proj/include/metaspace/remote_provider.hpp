#pragma once

#include <chrono>
#include <string>

#include "metaspace/gateway.hpp"

namespace metaspace {

struct RemoteConfig
{
    std::string base_url; ///< e.g. "https://api.example.com/v1"
    std::string model;
    std::string api_key;
    std::chrono::milliseconds timeout{30000};
    int retries = 2; ///< extra attempts after a transport failure
    double temperature = 0.9;

    /// Reads GATEWAY_BASE_URL, GATEWAY_MODEL and GATEWAY_API_KEY. Throws
    /// ProviderError("ProviderRejected") when the base URL or model is unset.
    static RemoteConfig from_env();
};

/// Chat-completion client: POST {base_url}/chat/completions.
class RemoteProvider final : public Provider
{
public:
    explicit RemoteProvider(RemoteConfig config);

    /// Throws ProviderError("ProviderTimeout") once retries are exhausted and
    /// ProviderError("ProviderRejected") on a non-retryable status or an
    /// unreadable body.
    std::string complete(const GenerationRequest& request) override;
    std::string_view name() const override { return "remote"; }

private:
    RemoteConfig m_config;
    std::string m_origin; ///< scheme://host[:port]
    std::string m_path;   ///< path prefix, no trailing slash
};

} // namespace metaspace
