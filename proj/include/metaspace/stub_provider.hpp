#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "metaspace/gateway.hpp"
#include "metaspace/metaphor.hpp"

namespace metaspace {

/// Seeded offline provider. Output is a pure function of the request: the
/// rendered prompt, its bindings and the seed. Content prompts read the
/// `ctx.*` bindings (recent history, interests, identity mode) and always
/// satisfy the request's constraints; words from `ctx.history` are avoided so
/// the similarity checks pass.
class StubProvider final : public Provider
{
public:
    std::string complete(const GenerationRequest& request) override;
    std::string_view name() const override { return "stub"; }
    bool metered() const override { return false; }
};

struct ChannelIdentity
{
    std::string name;
    std::string bio;
};

/// Local channel name and bio generator (there is no channel prompt).
ChannelIdentity generate_channel_identity(std::string_view interest, const MetaphorAttributes& attrs,
                                          std::uint64_t seed);

} // namespace metaspace
