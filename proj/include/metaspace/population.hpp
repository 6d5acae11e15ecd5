#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "metaspace/gateway.hpp"
#include "metaspace/metaphor.hpp"
#include "metaspace/taxonomy.hpp"

namespace metaspace {

/// Index of a member (agent or human participant) within one simulation.
using ActorId = std::uint32_t;

enum class Role : std::uint8_t {
    Influencer,
    Spreader,
    SupportSeeker,
    Entertainer,
    Moderator,
    Activist,
    Networker,
    Lurker,
    Bully,
};
inline constexpr std::size_t kRoleCount = 9;

std::string_view role_name(Role role);
std::string_view role_goal(Role role);
std::optional<Role> parse_role(std::string_view name);

inline constexpr std::array<std::string_view, 25> kInterests = {
    "Animals",   "Art & Design", "Automobiles",       "DIY & Crafting", "Education",   "Fashion",
    "Finance",   "Fitness",      "Food",              "Gaming",         "History & Culture", "Lifestyle",
    "Literature", "Movies",      "Music",             "Nature",         "Personal Development", "Photography",
    "Psychology", "Religion",    "Social",            "Sports",         "Technology",  "Travel",
    "Wellness",
};

std::optional<std::size_t> interest_index(std::string_view name);

struct Traits
{
    double posting = 0.0;      // [0, 1]
    double commenting = 0.5;   // [0.5, 1]
    double reacting = 0.5;     // [0.5, 1]
    double messaging = 0.5;    // [0.5, 1]
    double updating = 0.0;     // [0, 1]
    double comm = 0.0;         // [0, 1]
    double notification = 0.0; // [0, 1]

    double mean() const;
    bool operator==(const Traits&) const = default;
};

/// Field name of the first trait outside its range, if any.
std::optional<std::string> trait_violation(const Traits& traits);

struct AgentProfile
{
    std::string id_name;
    std::string user_name;
    std::string email;
    std::string password;
    std::string user_bio;
    std::string profile_picture;
    Role role = Role::Lurker;
    Traits traits;
    std::vector<std::string> interests;
    std::string persona_name;
    std::string social_group_name;

    std::uint32_t interest_mask() const;
    bool operator==(const AgentProfile&) const = default;
};

/// The sixteen provider fields plus "role" and "goal".
nlohmann::ordered_json to_json(const AgentProfile& profile);

/// Strict schema check of a provider object (the sixteen fields; "role" is
/// read when present). Throws ProfileError("SchemaViolation", field).
AgentProfile profile_from_json(const nlohmann::json& object, std::optional<Role> role = std::nullopt);

std::string identity_prompt(Identity identity);

struct AgentRequest
{
    Role role = Role::Lurker;
    const MetaphorAttributes* attrs = nullptr;
    std::string keyword;
    Identity identity = Identity::Pseudonymous;
    std::vector<std::string> existing_names;
    std::vector<std::string> existing_bios;
    std::vector<std::string> existing_ids;
};

inline constexpr int kAgentAttempts = 5;

/// Asks the provider for one profile, retrying up to kAgentAttempts times on
/// a schema violation or a duplicate name, bio or id. Throws the last
/// ProfileError("SchemaViolation") or ProfileError("UniquenessExhausted").
AgentProfile generate_agent(Gateway& gateway, const AgentRequest& request, std::uint64_t seed);

/// For n >= 9 every role appears at least once; the rest are uniform draws.
std::vector<Role> assign_roles(int n, std::uint64_t seed);

/// Serializes uniqueness checks across concurrent generation.
class RosterRegistry
{
public:
    /// False (and nothing recorded) when any of the three is taken.
    bool try_register(const AgentProfile& profile);
    std::vector<std::string> names() const;
    std::vector<std::string> bios() const;
    std::vector<std::string> ids() const;

private:
    mutable std::mutex m_mutex;
    std::vector<std::string> m_names, m_bios, m_ids;
};

inline constexpr int kRosterBatch = 4;

/// Generates `config.user_count` agents in batches of kRosterBatch; each
/// batch sees the names registered before it. `parallelism` only bounds the
/// concurrent provider calls within a batch, so the roster depends on the
/// seed alone.
std::vector<AgentProfile> generate_roster(Gateway& gateway, const MetaphorAttributes& attrs, std::string_view keyword,
                                          const PlatformConfig& config, std::uint64_t seed, int parallelism = 4);

/// Population size implied by the attribute text: the user count of the
/// provider's feature mapping when it parses, else the stub rule.
int decide_population_size(const MetaphorAttributes& attrs, Gateway& gateway, std::uint64_t seed);

using ActorPair = std::pair<ActorId, ActorId>;

inline ActorPair unordered(ActorId a, ActorId b) { return a < b ? ActorPair{a, b} : ActorPair{b, a}; }

struct SocialGraph
{
    std::size_t size = 0;
    std::set<ActorPair> follows; ///< (follower, followee)
    std::set<ActorPair> friends; ///< unordered pairs, smaller id first
    std::map<ActorPair, int> closeness; ///< unordered pairs, 1..10

    bool follows_(ActorId follower, ActorId followee) const { return follows.contains({follower, followee}); }
    bool are_friends(ActorId a, ActorId b) const { return friends.contains(unordered(a, b)); }
    std::optional<int> closeness_of(ActorId a, ActorId b) const;
    bool operator==(const SocialGraph&) const = default;
};

inline constexpr int kFriendClosenessMin = 5;
inline constexpr int kChatClosenessMax = 5;

/// Random follows with expected out-degree min(follow_degree, n - 1); a share
/// of mutual follows promoted to friends with closeness 5..10.
SocialGraph build_graph(std::size_t n, const GraphParams& params, std::uint64_t seed);

/// Ranks other members by interest Jaccard, excluding self, friends and
/// anyone with a pending request in either direction. Ties by ascending id.
std::vector<ActorId> recommend_users(ActorId agent, const SocialGraph& graph,
                                     std::span<const AgentProfile> profiles,
                                     const std::set<ActorPair>& pending = {});

} // namespace metaspace
