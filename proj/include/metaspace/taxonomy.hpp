#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metaspace/metaphor.hpp"

namespace metaspace {

/// Fixed-size set over a dense enum with `N` values.
template <typename Enum, std::size_t N>
class FlagSet
{
public:
    constexpr FlagSet() = default;
    FlagSet(std::initializer_list<Enum> items)
    {
        for (Enum e : items) {
            insert(e);
        }
    }

    void insert(Enum e) { m_bits.set(static_cast<std::size_t>(e)); }
    void erase(Enum e) { m_bits.reset(static_cast<std::size_t>(e)); }
    bool contains(Enum e) const { return m_bits.test(static_cast<std::size_t>(e)); }
    bool empty() const { return m_bits.none(); }
    std::size_t size() const { return m_bits.count(); }

    std::vector<Enum> values() const
    {
        std::vector<Enum> out;
        for (std::size_t i = 0; i < N; ++i) {
            if (m_bits.test(i)) {
                out.push_back(static_cast<Enum>(i));
            }
        }
        return out;
    }

    bool is_subset_of(const FlagSet& other) const { return (m_bits & ~other.m_bits).none(); }
    std::uint64_t bits() const { return m_bits.to_ullong(); }
    static FlagSet from_bits(std::uint64_t bits)
    {
        FlagSet s;
        s.m_bits = std::bitset<N>(bits);
        return s;
    }

    bool operator==(const FlagSet&) const = default;

private:
    std::bitset<N> m_bits;
};

// LV1: network structure
enum class Timeline : std::uint8_t { FeedBased, ChatBased };
enum class ContentOrder : std::uint8_t { Chronological, Algorithmic };
enum class ConnectionType : std::uint8_t { NetworkBased, GroupBased };
// LV2: interaction mechanisms
enum class Commenting : std::uint8_t { FlatThreads, NestedThreads };
enum class Reactions : std::uint8_t { LikeOnly, UpvoteDownvote, Expanded };
enum class ContentManagement : std::uint8_t { Edit, Delete };
enum class AccountType : std::uint8_t { Public, PrivateOneWay, PrivateMutual };
enum class Identity : std::uint8_t { RealName, Pseudonymous, Anonymous };
enum class MessagingType : std::uint8_t { OneToOne, Group };
enum class MessagingAudience : std::uint8_t { WithConnection, Everyone };
// LV3: advanced features
enum class Visibility : std::uint8_t { Public, Private };
enum class Discovery : std::uint8_t { TopicBased, PopularityBased };
enum class NetworkingControl : std::uint8_t { Block, Mute };
enum class PrivacySetting : std::uint8_t { InvitedOnly, ShowAll };

using ContentManagementSet = FlagSet<ContentManagement, 2>;
using AccountTypeSet = FlagSet<AccountType, 3>;
using MessagingTypeSet = FlagSet<MessagingType, 2>;
using NetworkingControlSet = FlagSet<NetworkingControl, 2>;

/// Tunables for initial social-graph construction. Not part of the feature
/// taxonomy, but carried in the config file so runs are reproducible.
struct GraphParams
{
    double follow_degree = 8.0;      ///< expected out-degree, capped at n - 1
    double friend_promotion = 0.3;   ///< share of mutual follows promoted to friends

    bool operator==(const GraphParams&) const = default;
};

struct PlatformConfig
{
    static constexpr int kMinUsers = 5;
    static constexpr int kMaxUsers = 100;

    Timeline timeline = Timeline::FeedBased;
    ContentOrder content_order = ContentOrder::Chronological;
    ConnectionType connection_type = ConnectionType::NetworkBased;
    int user_count = 20;

    Commenting commenting = Commenting::FlatThreads;
    Reactions reactions = Reactions::LikeOnly;
    ContentManagementSet content_management;
    AccountTypeSet account_types{AccountType::Public};
    Identity identity = Identity::Pseudonymous;
    MessagingTypeSet messaging_types{MessagingType::OneToOne};
    MessagingAudience messaging_audience = MessagingAudience::Everyone;

    bool ephemeral_enabled = false;
    Visibility visibility_control = Visibility::Public;
    Discovery discovery = Discovery::TopicBased;
    NetworkingControlSet networking_control;
    PrivacySetting privacy_setting = PrivacySetting::ShowAll;

    GraphParams graph;

    bool operator==(const PlatformConfig&) const = default;
};

/// The 18 agent actions.
enum class ActionKind : std::uint8_t {
    // activity
    AddPost,
    AddChannelPost,
    AddEphemeralContent,
    AddCommentOnPost,
    AddCommentOnComment,
    React,
    // engagement
    StartNewChat,
    StartNewGroupChat,
    SendMessage1to1,
    SendMessageGroup,
    CreateChannel,
    JoinChannel,
    ReadUnreadMessages,
    // update
    SendFriendRequest,
    AcceptFriendRequest,
    UpdateRelation,
    UpdateRestriction,
    UpdatePostVisibility,
};
inline constexpr std::size_t kActionCount = 18;
using ActionSet = FlagSet<ActionKind, kActionCount>;

enum class ActionGroup : std::uint8_t { Activity, Engagement, Update };

std::array<ActionKind, kActionCount> all_actions();
ActionGroup action_group(ActionKind kind);
std::string_view action_name(ActionKind kind);
std::optional<ActionKind> parse_action_name(std::string_view name);

/// Canonical value spellings used in the config file format.
std::string_view label(Timeline v);
std::string_view label(ContentOrder v);
std::string_view label(ConnectionType v);
std::string_view label(Commenting v);
std::string_view label(Reactions v);
std::string_view label(ContentManagement v);
std::string_view label(AccountType v);
std::string_view label(Identity v);
std::string_view label(MessagingType v);
std::string_view label(MessagingAudience v);
std::string_view label(Visibility v);
std::string_view label(Discovery v);
std::string_view label(NetworkingControl v);
std::string_view label(PrivacySetting v);

/// Reaction tokens permitted under a reaction mode.
std::vector<std::string> reaction_tokens(Reactions mode);
bool reaction_allowed(Reactions mode, std::string_view token);

/// Feature labels in answer order. Labels in the response are matched
/// case-insensitively with markdown decoration stripped.
inline constexpr std::array<std::string_view, 16> kFeatureLabels = {
    "Timeline Types",   "Content Order",           "Connection Type",   "User Count",
    "Commenting",       "Reactions",               "Content Management", "Account Types",
    "Identity Options", "Messaging Types",         "Messaging Audience", "Ephemeral Content",
    "Content Visibility Control", "Content Discovery", "Networking Control", "Privacy Settings",
};

struct FeatureResponse
{
    PlatformConfig config;
    std::string rationale;
};

/// Parses the "Label: Value" answer to the feature-mapping prompt.
/// Preamble before the first recognized label is skipped; the config block
/// ends at the first other non-blank line, and everything from there on is
/// the rationale. Errors (FeatureError codes): UnknownValue, MissingFeature,
/// UserCountOutOfRange.
FeatureResponse parse_feature_response(std::string_view raw_response);

/// Writes the canonical config document (inverse of parse_feature_response).
std::string format_config(const PlatformConfig& config, std::string_view rationale = {});

struct Violation
{
    enum class Rule { Range, NonEmpty, Domain };
    std::string field;
    Rule rule;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

std::vector<Violation> validate_config(const PlatformConfig& config);

/// Actions the interface offers under `config`. Throws FeatureError
/// ("InvalidConfig") when validate_config reports violations.
ActionSet feasible_actions(const PlatformConfig& config);

/// Offline replacement for the feature-mapping prompt: keyword rules on the
/// attribute text with seed-based tie-breaking. Always yields a valid config.
PlatformConfig stub_attributes_to_config(const MetaphorAttributes& attrs, std::uint64_t seed);

/// Population size implied by the attribute text under the stub rules.
int stub_population_size(const MetaphorAttributes& attrs, std::uint64_t seed);

} // namespace metaspace
