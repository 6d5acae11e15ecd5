#include "metaspace/population.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "metaspace/errors.hpp"
#include "metaspace/kernels.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

namespace {

constexpr std::array<std::string_view, kRoleCount> kRoleNames = {
    "Influencer", "Spreader", "Support-Seeker", "Entertainer", "Moderator",
    "Activist",   "Networker", "Lurker",        "Bully",
};

constexpr std::array<std::string_view, kRoleCount> kRoleGoals = {
    "Gain followers and increase visibility",
    "Disseminate ideas or information",
    "Find emotional support or affirmation",
    "Engage others with humorous or creative content",
    "Facilitate and regulate discussions",
    "Raise awareness of social or political issues",
    "Connect with like-minded individuals",
    "Observe without active engagement",
    "Disrupt or provoke with hostile comments",
};

struct TraitField
{
    const char* key;
    double Traits::*member;
    double lo;
};

constexpr std::array<TraitField, 7> kTraitFields = {{
    {"posting_trait", &Traits::posting, 0.0},
    {"commenting_trait", &Traits::commenting, 0.5},
    {"reacting_trait", &Traits::reacting, 0.5},
    {"messaging_trait", &Traits::messaging, 0.5},
    {"updating_trait", &Traits::updating, 0.0},
    {"comm_trait", &Traits::comm, 0.0},
    {"notification_trait", &Traits::notification, 0.0},
}};

[[noreturn]] void schema(const std::string& field, const std::string& why)
{
    throw ProfileError("SchemaViolation", field, "profile field " + field + ": " + why);
}

std::string text_field(const nlohmann::json& o, const char* key)
{
    auto it = o.find(key);
    if (it == o.end()) {
        schema(key, "missing");
    }
    if (!it->is_string() || utf8::trim(it->get<std::string>()).empty()) {
        schema(key, "must be non-empty text");
    }
    return utf8::trim(it->get<std::string>());
}

double number_field(const nlohmann::json& o, const char* key)
{
    auto it = o.find(key);
    if (it == o.end()) {
        schema(key, "missing");
    }
    if (it->is_number()) {
        return it->get<double>();
    }
    if (it->is_string()) {
        try {
            std::size_t used = 0;
            const std::string s = utf8::trim(it->get<std::string>());
            double v = std::stod(s, &used);
            if (used == s.size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
    }
    schema(key, "must be a number");
}

} // namespace

std::string_view role_name(Role role) { return kRoleNames[static_cast<std::size_t>(role)]; }
std::string_view role_goal(Role role) { return kRoleGoals[static_cast<std::size_t>(role)]; }

std::optional<Role> parse_role(std::string_view name)
{
    for (std::size_t i = 0; i < kRoleCount; ++i) {
        if (kRoleNames[i] == name) {
            return static_cast<Role>(i);
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> interest_index(std::string_view name)
{
    for (std::size_t i = 0; i < kInterests.size(); ++i) {
        if (kInterests[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

double Traits::mean() const
{
    return (posting + commenting + reacting + messaging + updating + comm + notification) / 7.0;
}

std::optional<std::string> trait_violation(const Traits& t)
{
    for (const auto& f : kTraitFields) {
        const double v = t.*(f.member);
        if (!std::isfinite(v) || v < f.lo || v > 1.0) {
            return std::string(f.key);
        }
    }
    return std::nullopt;
}

std::uint32_t AgentProfile::interest_mask() const
{
    std::uint32_t mask = 0;
    for (const auto& i : interests) {
        if (auto k = interest_index(i)) {
            mask |= 1u << *k;
        }
    }
    return mask;
}

nlohmann::ordered_json to_json(const AgentProfile& p)
{
    nlohmann::ordered_json j;
    j["id_name"] = p.id_name;
    j["user_name"] = p.user_name;
    j["email"] = p.email;
    j["password"] = p.password;
    j["user_bio"] = p.user_bio;
    j["profile_picture"] = p.profile_picture;
    for (const auto& f : kTraitFields) {
        j[f.key] = p.traits.*(f.member);
    }
    j["interests"] = p.interests;
    j["persona_name"] = p.persona_name;
    j["social_group_name"] = p.social_group_name;
    j["role"] = std::string(role_name(p.role));
    j["goal"] = std::string(role_goal(p.role));
    return j;
}

AgentProfile profile_from_json(const nlohmann::json& o, std::optional<Role> role)
{
    if (!o.is_object()) {
        schema("profile", "not an object");
    }
    AgentProfile p;
    p.id_name = text_field(o, "id_name");
    if (!p.id_name.starts_with("ID_")) {
        schema("id_name", "must start with ID_");
    }
    p.user_name = text_field(o, "user_name");
    p.email = text_field(o, "email");
    p.password = text_field(o, "password");
    p.user_bio = text_field(o, "user_bio");
    p.profile_picture = text_field(o, "profile_picture");
    p.persona_name = text_field(o, "persona_name");
    p.social_group_name = text_field(o, "social_group_name");
    for (const auto& f : kTraitFields) {
        p.traits.*(f.member) = number_field(o, f.key);
    }
    if (auto bad = trait_violation(p.traits)) {
        schema(*bad, "outside its range");
    }
    auto it = o.find("interests");
    if (it == o.end() || !it->is_array()) {
        schema("interests", "must be a list");
    }
    for (const auto& v : *it) {
        if (!v.is_string() || !interest_index(v.get<std::string>())) {
            schema("interests", "not in the predefined list");
        }
        const auto name = v.get<std::string>();
        if (std::find(p.interests.begin(), p.interests.end(), name) == p.interests.end()) {
            p.interests.push_back(name);
        }
    }
    if (p.interests.size() < 3) {
        schema("interests", "needs at least 3 distinct interests");
    }
    if (role) {
        p.role = *role;
    } else if (auto r = o.find("role"); r != o.end() && r->is_string()) {
        auto parsed = parse_role(r->get<std::string>());
        if (!parsed) {
            schema("role", "unknown role");
        }
        p.role = *parsed;
    }
    return p;
}

std::string identity_prompt(Identity identity)
{
    switch (identity) {
    case Identity::RealName:
        return "Real-name: use a realistic first and last name, the way people appear on professional networks.";
    case Identity::Pseudonymous:
        return "Pseudonymous: use a creative alias that does not reveal a real name.";
    case Identity::Anonymous:
        return "Anonymous: use a random, non-identifying handle with no personal details.";
    }
    return {};
}

AgentProfile generate_agent(Gateway& gateway, const AgentRequest& request, std::uint64_t seed)
{
    const MetaphorAttributes empty_attrs;
    const MetaphorAttributes& attrs = request.attrs ? *request.attrs : empty_attrs;
    Bindings b;
    b["goalRole.goal"] = std::string(role_goal(request.role));
    b["goalRole.role"] = std::string(role_name(request.role));
    b["descr.llm_descr"] = to_json(attrs).dump();
    auto fields = attribute_fields(attrs);
    for (std::size_t i = 0; i < kAttributeKeys.size(); ++i) {
        b["descr.llm_descr." + std::string(kAttributeKeys[i])] = *fields[i];
    }
    b["identity_prompt"] = identity_prompt(request.identity);
    b["descriptions.keyword"] = request.keyword;
    b["ctx.identity"] = std::string(request.identity == Identity::RealName    ? "RealName"
                                    : request.identity == Identity::Anonymous ? "Anonymous"
                                                                              : "Pseudonymous");

    std::vector<std::string> names = request.existing_names;
    std::vector<std::string> bios = request.existing_bios;
    std::optional<ProfileError> last;
    for (int attempt = 0; attempt < kAgentAttempts; ++attempt) {
        b["existingUserNames"] = names.empty() ? std::string("(none yet)") : render_binding(names);
        std::string quoted;
        for (const auto& bio : bios) {
            quoted += (quoted.empty() ? "\"" : "; \"") + bio + "\"";
        }
        b["existingUserBios"] = quoted.empty() ? std::string("(none yet)") : quoted;
        b["ctx.existing_names"] = names;

        const std::string raw = gateway.generate(PromptId::AgentUser, b, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        try {
            auto object = first_object_literal(raw);
            if (!object) {
                schema("profile", "no JSON object in response");
            }
            AgentProfile p = profile_from_json(*object, request.role);
            const bool dup_name = std::find(names.begin(), names.end(), p.user_name) != names.end();
            const bool dup_bio = std::find(bios.begin(), bios.end(), p.user_bio) != bios.end();
            const bool dup_id = std::find(request.existing_ids.begin(), request.existing_ids.end(), p.id_name) !=
                                request.existing_ids.end();
            if (!dup_name && !dup_bio && !dup_id) {
                return p;
            }
            last = ProfileError("UniquenessExhausted", dup_name ? "user_name" : dup_bio ? "user_bio" : "id_name",
                                "could not obtain a unique profile after " + std::to_string(kAgentAttempts) +
                                    " attempts");
            // Make the duplicate visible to the next attempt's prompt.
            if (dup_name) {
                names.push_back(p.user_name);
            }
            if (dup_bio) {
                bios.push_back(p.user_bio);
            }
        } catch (const ProfileError& e) {
            last = e;
        }
    }
    throw *last;
}

std::vector<Role> assign_roles(int n, std::uint64_t seed)
{
    Rng rng(mix_seed(seed, 0x201e5));
    std::vector<Role> roles;
    roles.reserve(std::max(n, 0));
    if (n >= static_cast<int>(kRoleCount)) {
        for (std::size_t i = 0; i < kRoleCount; ++i) {
            roles.push_back(static_cast<Role>(i));
        }
    }
    while (static_cast<int>(roles.size()) < n) {
        roles.push_back(static_cast<Role>(rng.below(kRoleCount)));
    }
    rng.shuffle(roles.begin(), roles.end());
    return roles;
}

bool RosterRegistry::try_register(const AgentProfile& p)
{
    std::lock_guard lock(m_mutex);
    auto has = [](const std::vector<std::string>& v, const std::string& s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    if (has(m_names, p.user_name) || has(m_bios, p.user_bio) || has(m_ids, p.id_name)) {
        return false;
    }
    m_names.push_back(p.user_name);
    m_bios.push_back(p.user_bio);
    m_ids.push_back(p.id_name);
    return true;
}

std::vector<std::string> RosterRegistry::names() const
{
    std::lock_guard lock(m_mutex);
    return m_names;
}

std::vector<std::string> RosterRegistry::bios() const
{
    std::lock_guard lock(m_mutex);
    return m_bios;
}

std::vector<std::string> RosterRegistry::ids() const
{
    std::lock_guard lock(m_mutex);
    return m_ids;
}

std::vector<AgentProfile> generate_roster(Gateway& gateway, const MetaphorAttributes& attrs, std::string_view keyword,
                                          const PlatformConfig& config, std::uint64_t seed, int parallelism)
{
    const int n = config.user_count;
    const auto roles = assign_roles(n, seed);
    RosterRegistry registry;
    std::vector<AgentProfile> roster;
    roster.reserve(n);
    const int batch = kRosterBatch;
    const int lanes = std::clamp(parallelism, 1, batch);

    auto request_for = [&](int index) {
        AgentRequest r;
        r.role = roles[index];
        r.attrs = &attrs;
        r.keyword = std::string(keyword);
        r.identity = config.identity;
        r.existing_names = registry.names();
        r.existing_bios = registry.bios();
        r.existing_ids = registry.ids();
        return r;
    };

    for (int start = 0; start < n; start += batch) {
        const int end = std::min(n, start + batch);
        std::vector<AgentRequest> requests;
        for (int i = start; i < end; ++i) {
            requests.push_back(request_for(i));
        }
        std::vector<AgentProfile> produced;
        std::exception_ptr failure;
        for (int lane_start = start; lane_start < end; lane_start += lanes) {
            std::vector<std::future<AgentProfile>> pending;
            for (int i = lane_start; i < std::min(end, lane_start + lanes); ++i) {
                pending.push_back(std::async(std::launch::async, [&gateway, &requests, i, start, seed] {
                    return generate_agent(gateway, requests[i - start], mix_seed(seed, static_cast<std::uint64_t>(i)));
                }));
            }
            for (auto& f : pending) {
                try {
                    produced.push_back(f.get());
                } catch (...) {
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
        for (int i = start; i < end; ++i) {
            AgentProfile p = std::move(produced[i - start]);
            if (!registry.try_register(p)) {
                // collided with a sibling in the same batch: redo sequentially
                p = generate_agent(gateway, request_for(i), mix_seed(seed, static_cast<std::uint64_t>(i), 0xC011));
                if (!registry.try_register(p)) {
                    throw ProfileError("UniquenessExhausted", "user_name", "roster registry rejected agent");
                }
            }
            roster.push_back(std::move(p));
        }
    }
    return roster;
}

int decide_population_size(const MetaphorAttributes& attrs, Gateway& gateway, std::uint64_t seed)
{
    Bindings b;
    b["descr.llm_descr"] = to_json(attrs).dump();
    try {
        auto parsed = parse_feature_response(gateway.generate(PromptId::FeatureMapping, b, seed));
        return parsed.config.user_count;
    } catch (const FeatureError&) {
        return stub_population_size(attrs, seed);
    }
}

std::optional<int> SocialGraph::closeness_of(ActorId a, ActorId b) const
{
    auto it = closeness.find(unordered(a, b));
    if (it == closeness.end()) {
        return std::nullopt;
    }
    return it->second;
}

SocialGraph build_graph(std::size_t n, const GraphParams& params, std::uint64_t seed)
{
    SocialGraph g;
    g.size = n;
    if (n < 2) {
        return g;
    }
    Rng rng(mix_seed(seed, 0x6a4f));
    const double degree = std::min(params.follow_degree, static_cast<double>(n - 1));
    const double p = degree / static_cast<double>(n - 1);
    for (ActorId a = 0; a < n; ++a) {
        for (ActorId b = 0; b < n; ++b) {
            if (a != b && rng.chance(p)) {
                g.follows.insert({a, b});
            }
        }
    }
    for (const auto& [a, b] : g.follows) {
        if (a < b && g.follows.contains({b, a}) && rng.chance(params.friend_promotion)) {
            g.friends.insert({a, b});
            g.closeness[{a, b}] = rng.between(kFriendClosenessMin, 10);
        }
    }
    return g;
}

std::vector<ActorId> recommend_users(ActorId agent, const SocialGraph& graph, std::span<const AgentProfile> profiles,
                                     const std::set<ActorPair>& pending)
{
    if (agent >= profiles.size()) {
        return {};
    }
    std::vector<std::uint32_t> masks(profiles.size());
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        masks[i] = profiles[i].interest_mask();
    }
    const auto scores = kernels::jaccard_scores(masks[agent], masks, kernels::Exec::Serial);
    std::vector<ActorId> out;
    for (ActorId other = 0; other < profiles.size(); ++other) {
        if (other == agent || graph.are_friends(agent, other) || pending.contains({agent, other}) ||
            pending.contains({other, agent})) {
            continue;
        }
        out.push_back(other);
    }
    std::stable_sort(out.begin(), out.end(), [&](ActorId a, ActorId b) { return scores[a] > scores[b]; });
    return out;
}

} // namespace metaspace
