#include "metaspace/taxonomy.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <span>
#include <sstream>

#include "metaspace/errors.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

namespace {

constexpr std::array<std::string_view, kActionCount> kActionNames = {
    "AddPost",           "AddChannelPost",     "AddEphemeralContent", "AddCommentOnPost",
    "AddCommentOnComment", "React",            "StartNewChat",        "StartNewGroupChat",
    "SendMessage1to1",   "SendMessageGroup",   "CreateChannel",       "JoinChannel",
    "ReadUnreadMessages", "SendFriendRequest", "AcceptFriendRequest", "UpdateRelation",
    "UpdateRestriction", "UpdatePostVisibility",
};

/// Lowercase alphanumerics only: "Private (one-way)" -> "privateoneway".
std::string normalize(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            out.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    return out;
}

template <typename T>
struct Alias
{
    std::string_view key;
    T value;
};

template <typename T>
std::optional<T> lookup(std::string_view value, std::initializer_list<Alias<T>> table)
{
    const std::string key = normalize(value);
    for (const auto& entry : table) {
        if (entry.key == key) {
            return entry.value;
        }
    }
    return std::nullopt;
}

enum class Feature : std::size_t {
    Timeline,
    ContentOrder,
    Connection,
    UserCount,
    Commenting,
    Reactions,
    ContentManagement,
    AccountTypes,
    Identity,
    MessagingTypes,
    MessagingAudience,
    Ephemeral,
    Visibility,
    Discovery,
    Networking,
    Privacy,
    FollowDegree,
    FriendPromotion,
};
constexpr std::size_t kRequiredFeatures = 16;

enum class Context { None, Messaging, Discovery, Ephemeral };

std::optional<Feature> match_label(const std::string& key, Context ctx)
{
    static const std::initializer_list<Alias<Feature>> labels = {
        {"timelinetypes", Feature::Timeline},
        {"timelinetype", Feature::Timeline},
        {"timeline", Feature::Timeline},
        {"timelineformat", Feature::Timeline},
        {"contentorder", Feature::ContentOrder},
        {"connectiontype", Feature::Connection},
        {"connectiontypes", Feature::Connection},
        {"usercount", Feature::UserCount},
        {"numberofusers", Feature::UserCount},
        {"commenting", Feature::Commenting},
        {"commentingstructure", Feature::Commenting},
        {"reactions", Feature::Reactions},
        {"contentmanagement", Feature::ContentManagement},
        {"accounttypes", Feature::AccountTypes},
        {"accounttype", Feature::AccountTypes},
        {"identityoptions", Feature::Identity},
        {"identityoption", Feature::Identity},
        {"identity", Feature::Identity},
        {"messagingtypes", Feature::MessagingTypes},
        {"messagingtype", Feature::MessagingTypes},
        {"messagingmodes", Feature::MessagingTypes},
        {"messagingaudience", Feature::MessagingAudience},
        {"audiencescope", Feature::MessagingAudience},
        {"ephemeralcontent", Feature::Ephemeral},
        {"ephemeral", Feature::Ephemeral},
        {"contentvisibilitycontrol", Feature::Visibility},
        {"visibilitycontrol", Feature::Visibility},
        {"contentvisibility", Feature::Visibility},
        {"contentdiscovery", Feature::Discovery},
        {"networkingcontrol", Feature::Networking},
        {"networkingcontrols", Feature::Networking},
        {"privacysettings", Feature::Privacy},
        {"privacysetting", Feature::Privacy},
        {"followdegree", Feature::FollowDegree},
        {"friendpromotionrate", Feature::FriendPromotion},
    };
    for (const auto& entry : labels) {
        if (entry.key == key) {
            return entry.value;
        }
    }
    switch (ctx) {
    case Context::Messaging:
        if (key == "types" || key == "type") {
            return Feature::MessagingTypes;
        }
        if (key == "audience") {
            return Feature::MessagingAudience;
        }
        break;
    case Context::Discovery:
        if (key == "recommendations" || key == "recommendation") {
            return Feature::Discovery;
        }
        break;
    case Context::Ephemeral:
        if (key == "enabled") {
            return Feature::Ephemeral;
        }
        break;
    case Context::None:
        break;
    }
    return std::nullopt;
}

std::string strip_decoration(std::string_view text)
{
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '*' || c == '[' || c == ']' || c == '`' || c == '_' || c == '#') {
            continue;
        }
        out.push_back(c);
    }
    std::string t = utf8::trim(out);
    while (!t.empty() && (t.front() == '-' || t.front() == '>' || t.front() == '+')) {
        t = utf8::trim(std::string_view(t).substr(1));
    }
    while (!t.empty() && t.back() == '.') {
        t.pop_back();
    }
    return utf8::trim(t);
}

std::vector<std::string> split_values(std::string_view value, bool allow_slash)
{
    std::vector<std::string> parts;
    std::string current;
    auto flush = [&] {
        std::string t = utf8::trim(current);
        if (!t.empty()) {
            parts.push_back(t);
        }
        current.clear();
    };
    for (std::size_t i = 0; i < value.size(); ++i) {
        const char c = value[i];
        if (c == ',' || c == ';' || c == '&' || (allow_slash && c == '/')) {
            flush();
        } else if (value.substr(i, 5) == " and ") {
            flush();
            i += 4;
        } else {
            current.push_back(c);
        }
    }
    flush();
    return parts;
}

[[noreturn]] void unknown_value(std::string_view label, std::string_view value)
{
    throw FeatureError("UnknownValue", std::string(label),
                       "unknown value '" + std::string(value) + "' for " + std::string(label));
}

template <typename T>
T require(std::string_view label, std::string_view value, std::initializer_list<Alias<T>> table)
{
    auto v = lookup(value, table);
    if (!v) {
        unknown_value(label, value);
    }
    return *v;
}

bool is_none(std::string_view value)
{
    const std::string key = normalize(value);
    return key.empty() || key == "none" || key == "no" || key == "n/a" || key == "na";
}

template <typename Set, typename T>
Set require_set(std::string_view label, std::string_view value, bool allow_empty, bool allow_slash,
                std::initializer_list<Alias<T>> table)
{
    Set out;
    if (allow_empty && is_none(value)) {
        return out;
    }
    for (const auto& part : split_values(value, allow_slash)) {
        out.insert(require(label, part, table));
    }
    if (out.empty() && !allow_empty) {
        unknown_value(label, value);
    }
    return out;
}

int parse_user_count(std::string_view value)
{
    std::size_t i = 0;
    while (i < value.size() && !std::isdigit(static_cast<unsigned char>(value[i]))) {
        ++i;
    }
    if (i == value.size()) {
        unknown_value("User Count", value);
    }
    long long n = 0;
    while (i < value.size() && std::isdigit(static_cast<unsigned char>(value[i]))) {
        n = std::min<long long>(n * 10 + (value[i] - '0'), 1'000'000'000);
        ++i;
    }
    if (n < PlatformConfig::kMinUsers || n > PlatformConfig::kMaxUsers) {
        throw FeatureError("UserCountOutOfRange", "User Count",
                           "user count " + std::to_string(n) + " outside [5, 100]");
    }
    return static_cast<int>(n);
}

double parse_number(std::string_view label, std::string_view value)
{
    const std::string t = utf8::trim(value);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(out)) {
        unknown_value(label, value);
    }
    return out;
}

void apply_feature(PlatformConfig& c, Feature f, std::string_view label, const std::string& value)
{
    switch (f) {
    case Feature::Timeline:
        c.timeline = require<Timeline>(label, value, {{"feedbased", Timeline::FeedBased},
                                                      {"feed", Timeline::FeedBased},
                                                      {"chatbased", Timeline::ChatBased},
                                                      {"chat", Timeline::ChatBased}});
        break;
    case Feature::ContentOrder:
        c.content_order = require<ContentOrder>(label, value, {{"chronological", ContentOrder::Chronological},
                                                               {"algorithmic", ContentOrder::Algorithmic}});
        break;
    case Feature::Connection:
        c.connection_type = require<ConnectionType>(label, value, {{"networkbased", ConnectionType::NetworkBased},
                                                                   {"network", ConnectionType::NetworkBased},
                                                                   {"groupbased", ConnectionType::GroupBased},
                                                                   {"group", ConnectionType::GroupBased}});
        break;
    case Feature::UserCount:
        c.user_count = parse_user_count(value);
        break;
    case Feature::Commenting:
        c.commenting = require<Commenting>(label, value, {{"flatthreads", Commenting::FlatThreads},
                                                          {"flatthread", Commenting::FlatThreads},
                                                          {"flat", Commenting::FlatThreads},
                                                          {"nestedthreads", Commenting::NestedThreads},
                                                          {"nestedthread", Commenting::NestedThreads},
                                                          {"nested", Commenting::NestedThreads}});
        break;
    case Feature::Reactions:
        c.reactions = require<Reactions>(label, value, {{"like", Reactions::LikeOnly},
                                                        {"likeonly", Reactions::LikeOnly},
                                                        {"likes", Reactions::LikeOnly},
                                                        {"upvotedownvote", Reactions::UpvoteDownvote},
                                                        {"upvotesdownvotes", Reactions::UpvoteDownvote},
                                                        {"expandedreactions", Reactions::Expanded},
                                                        {"expandedreaction", Reactions::Expanded},
                                                        {"expanded", Reactions::Expanded}});
        break;
    case Feature::ContentManagement:
        c.content_management = require_set<ContentManagementSet, ContentManagement>(
            label, value, true, true, {{"edit", ContentManagement::Edit}, {"delete", ContentManagement::Delete}});
        break;
    case Feature::AccountTypes:
        c.account_types = require_set<AccountTypeSet, AccountType>(label, value, false, false,
                                                                   {{"public", AccountType::Public},
                                                                    {"privateoneway", AccountType::PrivateOneWay},
                                                                    {"oneway", AccountType::PrivateOneWay},
                                                                    {"privatemutual", AccountType::PrivateMutual},
                                                                    {"mutual", AccountType::PrivateMutual}});
        break;
    case Feature::Identity:
        c.identity = require<Identity>(label, value, {{"realname", Identity::RealName},
                                                      {"real", Identity::RealName},
                                                      {"pseudonymous", Identity::Pseudonymous},
                                                      {"pseudonym", Identity::Pseudonymous},
                                                      {"anonymous", Identity::Anonymous}});
        break;
    case Feature::MessagingTypes:
        c.messaging_types = require_set<MessagingTypeSet, MessagingType>(label, value, false, false,
                                                                         {{"privateoneonone", MessagingType::OneToOne},
                                                                          {"oneonone", MessagingType::OneToOne},
                                                                          {"onetoone", MessagingType::OneToOne},
                                                                          {"private11", MessagingType::OneToOne},
                                                                          {"private", MessagingType::OneToOne},
                                                                          {"groupmessaging", MessagingType::Group},
                                                                          {"group", MessagingType::Group},
                                                                          {"groupchat", MessagingType::Group}});
        break;
    case Feature::MessagingAudience:
        c.messaging_audience = require<MessagingAudience>(label, value,
                                                          {{"withconnection", MessagingAudience::WithConnection},
                                                           {"withconnections", MessagingAudience::WithConnection},
                                                           {"everyone", MessagingAudience::Everyone}});
        break;
    case Feature::Ephemeral:
        c.ephemeral_enabled = require<bool>(label, value, {{"yes", true},
                                                           {"enabled", true},
                                                           {"true", true},
                                                           {"no", false},
                                                           {"disabled", false},
                                                           {"false", false}});
        break;
    case Feature::Visibility:
        c.visibility_control = require<Visibility>(label, value, {{"public", Visibility::Public},
                                                                  {"private", Visibility::Private}});
        break;
    case Feature::Discovery:
        c.discovery = require<Discovery>(label, value, {{"topicbasedsuggestions", Discovery::TopicBased},
                                                        {"topicbasedsuggestion", Discovery::TopicBased},
                                                        {"topicbased", Discovery::TopicBased},
                                                        {"popularitybasedsuggestions", Discovery::PopularityBased},
                                                        {"popularitybasedsuggestion", Discovery::PopularityBased},
                                                        {"popularitybased", Discovery::PopularityBased}});
        break;
    case Feature::Networking:
        c.networking_control = require_set<NetworkingControlSet, NetworkingControl>(
            label, value, true, true, {{"block", NetworkingControl::Block}, {"mute", NetworkingControl::Mute}});
        break;
    case Feature::Privacy:
        c.privacy_setting = require<PrivacySetting>(label, value, {{"invitedcontentonly", PrivacySetting::InvitedOnly},
                                                                   {"invitedonly", PrivacySetting::InvitedOnly},
                                                                   {"inviteonly", PrivacySetting::InvitedOnly},
                                                                   {"showall", PrivacySetting::ShowAll}});
        break;
    case Feature::FollowDegree: {
        double d = parse_number(label, value);
        if (d < 0.0) {
            unknown_value(label, value);
        }
        c.graph.follow_degree = d;
        break;
    }
    case Feature::FriendPromotion: {
        double p = parse_number(label, value);
        if (p < 0.0 || p > 1.0) {
            unknown_value(label, value);
        }
        c.graph.friend_promotion = p;
        break;
    }
    }
}

bool is_level_header(const std::string& key)
{
    return key.size() >= 3 && key.starts_with("lv") && std::isdigit(static_cast<unsigned char>(key[2]));
}

template <typename Set, typename T>
std::string join_labels(const Set& set)
{
    std::string out;
    for (T v : set.values()) {
        if (!out.empty()) {
            out += ", ";
        }
        out += label(v);
    }
    return out.empty() ? "None" : out;
}

std::string format_number(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

std::array<ActionKind, kActionCount> all_actions()
{
    std::array<ActionKind, kActionCount> out{};
    for (std::size_t i = 0; i < kActionCount; ++i) {
        out[i] = static_cast<ActionKind>(i);
    }
    return out;
}

ActionGroup action_group(ActionKind kind)
{
    const auto i = static_cast<std::size_t>(kind);
    if (i <= static_cast<std::size_t>(ActionKind::React)) {
        return ActionGroup::Activity;
    }
    if (i <= static_cast<std::size_t>(ActionKind::ReadUnreadMessages)) {
        return ActionGroup::Engagement;
    }
    return ActionGroup::Update;
}

std::string_view action_name(ActionKind kind) { return kActionNames[static_cast<std::size_t>(kind)]; }

std::optional<ActionKind> parse_action_name(std::string_view name)
{
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (kActionNames[i] == name) {
            return static_cast<ActionKind>(i);
        }
    }
    return std::nullopt;
}

std::string_view label(Timeline v) { return v == Timeline::FeedBased ? "Feed-based" : "Chat-based"; }
std::string_view label(ContentOrder v) { return v == ContentOrder::Chronological ? "Chronological" : "Algorithmic"; }
std::string_view label(ConnectionType v) { return v == ConnectionType::NetworkBased ? "Network-based" : "Group-based"; }
std::string_view label(Commenting v) { return v == Commenting::FlatThreads ? "Flat Threads" : "Nested Threads"; }
std::string_view label(Reactions v)
{
    switch (v) {
    case Reactions::LikeOnly: return "Like";
    case Reactions::UpvoteDownvote: return "Upvote/Downvote";
    case Reactions::Expanded: return "Expanded Reactions";
    }
    return "?";
}
std::string_view label(ContentManagement v) { return v == ContentManagement::Edit ? "Edit" : "Delete"; }
std::string_view label(AccountType v)
{
    switch (v) {
    case AccountType::Public: return "Public";
    case AccountType::PrivateOneWay: return "Private (one-way)";
    case AccountType::PrivateMutual: return "Private (mutual)";
    }
    return "?";
}
std::string_view label(Identity v)
{
    switch (v) {
    case Identity::RealName: return "Real-name";
    case Identity::Pseudonymous: return "Pseudonymous";
    case Identity::Anonymous: return "Anonymous";
    }
    return "?";
}
std::string_view label(MessagingType v) { return v == MessagingType::OneToOne ? "Private one-on-one" : "Group messaging"; }
std::string_view label(MessagingAudience v) { return v == MessagingAudience::WithConnection ? "With connection" : "Everyone"; }
std::string_view label(Visibility v) { return v == Visibility::Public ? "Public" : "Private"; }
std::string_view label(Discovery v) { return v == Discovery::TopicBased ? "Topic-based Suggestions" : "Popularity-based Suggestions"; }
std::string_view label(NetworkingControl v) { return v == NetworkingControl::Block ? "Block" : "Mute"; }
std::string_view label(PrivacySetting v) { return v == PrivacySetting::InvitedOnly ? "Invited Content Only" : "Show All"; }

std::vector<std::string> reaction_tokens(Reactions mode)
{
    switch (mode) {
    case Reactions::LikeOnly: return {"like"};
    case Reactions::UpvoteDownvote: return {"up", "down"};
    case Reactions::Expanded: return {"like", "love", "haha", "wow", "sad", "angry"};
    }
    return {};
}

bool reaction_allowed(Reactions mode, std::string_view token)
{
    for (const auto& t : reaction_tokens(mode)) {
        if (t == token) {
            return true;
        }
    }
    return false;
}

FeatureResponse parse_feature_response(std::string_view raw_response)
{
    FeatureResponse out;
    std::array<bool, kRequiredFeatures> seen{};
    bool in_block = false;
    Context ctx = Context::None;
    std::size_t rationale_start = std::string_view::npos;

    std::size_t pos = 0;
    while (pos <= raw_response.size()) {
        std::size_t eol = raw_response.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = raw_response.size();
        }
        const std::string_view raw_line = raw_response.substr(pos, eol - pos);
        const std::size_t line_start = pos;
        pos = eol + 1;

        const std::string line = strip_decoration(raw_line);
        if (line.empty()) {
            continue;
        }
        const std::size_t colon = line.find(':');
        const std::string key = normalize(colon == std::string::npos ? line : line.substr(0, colon));
        if (is_level_header(key)) {
            ctx = Context::None;
            continue;
        }
        std::optional<Feature> feature;
        std::string value;
        bool context_only = false;
        if (colon != std::string::npos) {
            value = strip_decoration(line.substr(colon + 1));
            if (key == "messaging" && value.empty()) {
                context_only = true;
                ctx = Context::Messaging;
            } else {
                feature = match_label(key, ctx);
                if (feature && value.empty()) {
                    if (*feature == Feature::Discovery) {
                        context_only = true;
                        ctx = Context::Discovery;
                    } else if (*feature == Feature::Ephemeral) {
                        context_only = true;
                        ctx = Context::Ephemeral;
                    }
                }
            }
        }
        if (context_only) {
            in_block = true;
            continue;
        }
        if (!feature) {
            if (in_block) {
                rationale_start = line_start;
                break;
            }
            continue; // preamble
        }
        in_block = true;
        apply_feature(out.config, *feature, kFeatureLabels[std::min<std::size_t>(static_cast<std::size_t>(*feature), 15)],
                      value);
        if (static_cast<std::size_t>(*feature) < kRequiredFeatures) {
            seen[static_cast<std::size_t>(*feature)] = true;
        }
        if (*feature != Feature::MessagingTypes && *feature != Feature::MessagingAudience &&
            *feature != Feature::Discovery && *feature != Feature::Ephemeral) {
            ctx = Context::None;
        }
    }
    for (std::size_t i = 0; i < kRequiredFeatures; ++i) {
        if (!seen[i]) {
            throw FeatureError("MissingFeature", std::string(kFeatureLabels[i]),
                               "feature response lacks " + std::string(kFeatureLabels[i]));
        }
    }
    if (rationale_start != std::string_view::npos) {
        std::string rest = utf8::trim(raw_response.substr(rationale_start));
        for (std::string_view head : {"reasoning:", "rationale:", "explanation:"}) {
            if (utf8::to_lower_ascii(std::string_view(rest).substr(0, head.size())) == head) {
                rest = utf8::trim(std::string_view(rest).substr(head.size()));
                break;
            }
        }
        out.rationale = std::move(rest);
    }
    return out;
}

std::string format_config(const PlatformConfig& c, std::string_view rationale)
{
    std::string out;
    auto line = [&out](std::string_view l, std::string_view v) {
        out.append(l).append(": ").append(v).push_back('\n');
    };
    out += "LV1: Network Structure\n";
    line("Timeline Types", label(c.timeline));
    line("Content Order", label(c.content_order));
    line("Connection Type", label(c.connection_type));
    line("User Count", std::to_string(c.user_count));
    out += "\nLV2: Interaction Mechanisms\n";
    line("Commenting", label(c.commenting));
    line("Reactions", label(c.reactions));
    line("Content Management", join_labels<ContentManagementSet, ContentManagement>(c.content_management));
    line("Account Types", join_labels<AccountTypeSet, AccountType>(c.account_types));
    line("Identity Options", label(c.identity));
    line("Messaging Types", join_labels<MessagingTypeSet, MessagingType>(c.messaging_types));
    line("Messaging Audience", label(c.messaging_audience));
    out += "\nLV3: Advanced Features & Customization\n";
    line("Ephemeral Content", c.ephemeral_enabled ? "Yes" : "No");
    line("Content Visibility Control", label(c.visibility_control));
    line("Content Discovery", label(c.discovery));
    line("Networking Control", join_labels<NetworkingControlSet, NetworkingControl>(c.networking_control));
    line("Privacy Settings", label(c.privacy_setting));
    line("Follow Degree", format_number(c.graph.follow_degree));
    line("Friend Promotion Rate", format_number(c.graph.friend_promotion));
    if (!rationale.empty()) {
        out += "\nReasoning:\n";
        out.append(rationale);
        out.push_back('\n');
    }
    return out;
}

std::vector<Violation> validate_config(const PlatformConfig& c)
{
    std::vector<Violation> out;
    auto domain = [&out](std::string field, auto value, int max) {
        if (static_cast<int>(value) < 0 || static_cast<int>(value) > max) {
            out.push_back({std::move(field), Violation::Rule::Domain, "value outside enumeration"});
        }
    };
    domain("timeline", c.timeline, 1);
    domain("content_order", c.content_order, 1);
    domain("connection_type", c.connection_type, 1);
    if (c.user_count < PlatformConfig::kMinUsers || c.user_count > PlatformConfig::kMaxUsers) {
        out.push_back({"user_count", Violation::Rule::Range, "must lie in [5, 100]"});
    }
    domain("commenting", c.commenting, 1);
    domain("reactions", c.reactions, 2);
    if (c.account_types.empty()) {
        out.push_back({"account_types", Violation::Rule::NonEmpty, "at least one account type"});
    }
    domain("identity", c.identity, 2);
    if (c.messaging_types.empty()) {
        out.push_back({"messaging_types", Violation::Rule::NonEmpty, "at least one messaging type"});
    }
    domain("messaging_audience", c.messaging_audience, 1);
    domain("visibility_control", c.visibility_control, 1);
    domain("discovery", c.discovery, 1);
    domain("privacy_setting", c.privacy_setting, 1);
    if (!std::isfinite(c.graph.follow_degree) || c.graph.follow_degree < 0.0) {
        out.push_back({"graph.follow_degree", Violation::Rule::Range, "must be finite and >= 0"});
    }
    if (!(c.graph.friend_promotion >= 0.0 && c.graph.friend_promotion <= 1.0)) {
        out.push_back({"graph.friend_promotion", Violation::Rule::Range, "must lie in [0, 1]"});
    }
    return out;
}

ActionSet feasible_actions(const PlatformConfig& c)
{
    auto violations = validate_config(c);
    if (!violations.empty()) {
        throw FeatureError("InvalidConfig", violations.front().field,
                           "config violates " + violations.front().field + ": " + violations.front().detail);
    }
    ActionSet out{ActionKind::AddPost, ActionKind::AddCommentOnPost, ActionKind::React,
                  ActionKind::ReadUnreadMessages, ActionKind::UpdatePostVisibility};
    const bool group = c.connection_type == ConnectionType::GroupBased;
    if (group) {
        out.insert(ActionKind::CreateChannel);
        out.insert(ActionKind::JoinChannel);
        out.insert(ActionKind::AddChannelPost);
    } else {
        out.insert(ActionKind::SendFriendRequest);
        out.insert(ActionKind::AcceptFriendRequest);
        out.insert(ActionKind::UpdateRelation);
    }
    if (c.ephemeral_enabled) {
        out.insert(ActionKind::AddEphemeralContent);
    }
    if (c.messaging_types.contains(MessagingType::Group)) {
        out.insert(ActionKind::StartNewGroupChat);
        out.insert(ActionKind::SendMessageGroup);
    }
    if (c.messaging_types.contains(MessagingType::OneToOne)) {
        out.insert(ActionKind::StartNewChat);
        out.insert(ActionKind::SendMessage1to1);
    }
    if (!c.networking_control.empty()) {
        out.insert(ActionKind::UpdateRestriction);
    }
    if (c.commenting == Commenting::NestedThreads) {
        out.insert(ActionKind::AddCommentOnComment);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Stub rule table
// ---------------------------------------------------------------------------

namespace {

using Keywords = std::initializer_list<std::string_view>;

int keyword_score(const std::string& text, std::span<const std::string_view> words)
{
    int score = 0;
    for (auto w : words) {
        for (std::size_t p = text.find(w); p != std::string::npos; p = text.find(w, p + w.size())) {
            ++score;
        }
    }
    return score;
}

int keyword_score(const std::string& text, Keywords words)
{
    return keyword_score(text, std::span<const std::string_view>(words.begin(), words.size()));
}

/// Index of the highest score; ties (including all-zero) broken by the rng.
std::size_t pick_best(std::initializer_list<int> scores, Rng& rng)
{
    int best = -1;
    std::vector<std::size_t> tied;
    std::size_t i = 0;
    for (int s : scores) {
        if (s > best) {
            best = s;
            tied.assign(1, i);
        } else if (s == best) {
            tied.push_back(i);
        }
        ++i;
    }
    return tied.size() == 1 ? tied.front() : tied[rng.below(tied.size())];
}

const std::vector<std::string_view> kIntimate = {"intimate", "cozy",    "cosy", "close",    "private", "small",    "quiet",
                                "friends",  "family",  "trust", "bedroom", "home",    "sleepover", "personal",
                                "familiar", "tight-knit", "calm", "relaxed"};
const std::vector<std::string_view> kOpen = {"public", "crowd",   "stage",    "open",     "large",       "audience", "stadium",
                            "concert", "festival", "fair",   "street",   "everyone",    "broadcast", "vibrant",
                            "energetic", "stranger", "bustling", "lively", "spontaneous"};
const std::vector<std::string_view> kLarge = {"crowd", "large audience", "concert", "stadium", "festival", "mass",
                             "thousands", "hundreds", "arena", "convention", "packed", "huge"};
const std::vector<std::string_view> kSmall = {"small group", "few", "close friends", "couple", "pair", "handful",
                             "picnic", "intimate", "bedroom", "dinner", "sleepover", "small"};

std::string lowered_text(const MetaphorAttributes& attrs)
{
    std::string text;
    for (const auto* f : attribute_fields(attrs)) {
        text += utf8::to_lower_ascii(*f);
        text += " | ";
    }
    return text;
}

int population_from_text(const std::string& text, Rng& rng)
{
    if (keyword_score(text, kLarge) > 0) {
        return rng.between(60, PlatformConfig::kMaxUsers);
    }
    if (keyword_score(text, kSmall) > 0) {
        return rng.between(PlatformConfig::kMinUsers, 8);
    }
    return rng.between(12, 40);
}

} // namespace

int stub_population_size(const MetaphorAttributes& attrs, std::uint64_t seed)
{
    const std::string text = lowered_text(attrs);
    Rng rng(mix_seed(seed, stable_hash(text), 0x5157));
    return population_from_text(text, rng);
}

PlatformConfig stub_attributes_to_config(const MetaphorAttributes& attrs, std::uint64_t seed)
{
    const std::string text = lowered_text(attrs);
    Rng rng(mix_seed(seed, stable_hash(text)));
    PlatformConfig c;

    const bool open_space = pick_best({keyword_score(text, kOpen), keyword_score(text, kIntimate)}, rng) == 0;
    if (open_space) {
        c.timeline = Timeline::FeedBased;
        c.connection_type = ConnectionType::NetworkBased;
        c.account_types = {AccountType::Public};
        c.messaging_audience = MessagingAudience::Everyone;
        c.visibility_control = Visibility::Public;
    } else {
        c.timeline = Timeline::ChatBased;
        c.connection_type = ConnectionType::GroupBased;
        c.account_types = {AccountType::PrivateMutual};
        c.messaging_audience = MessagingAudience::WithConnection;
        c.visibility_control = Visibility::Private;
    }
    if (keyword_score(text, {"follow", "fan"}) > 0) {
        c.account_types.insert(AccountType::PrivateOneWay);
    }

    c.content_order = pick_best({keyword_score(text, {"recent", "live", "real-time", "moment", "sequence", "ongoing",
                                                       "routine", "daily", "chronolog"}),
                                 keyword_score(text, {"trend", "popular", "viral", "hype", "famous", "buzz",
                                                       "highlight"})},
                                rng) == 0
                          ? ContentOrder::Chronological
                          : ContentOrder::Algorithmic;

    c.commenting = pick_best({keyword_score(text, {"casual", "quick", "light", "brief", "simple", "chit-chat",
                                                    "small talk", "banter"}),
                              keyword_score(text, {"discussion", "debate", "thread", "deep", "reply", "exchange",
                                                    "dialogue", "argument", "knowledge"})},
                             rng) == 0
                       ? Commenting::FlatThreads
                       : Commenting::NestedThreads;

    switch (pick_best({keyword_score(text, {"support", "warm", "positive", "kind", "gentle", "cozy", "friendly",
                                             "affirm"}),
                       keyword_score(text, {"debate", "rank", "vote", "opinion", "quality", "knowledge", "compete",
                                             "argument"}),
                       keyword_score(text, {"emotion", "expressive", "vibrant", "fun", "playful", "energetic",
                                             "party", "celebrat", "excite"})},
                      rng)) {
    case 0: c.reactions = Reactions::LikeOnly; break;
    case 1: c.reactions = Reactions::UpvoteDownvote; break;
    default: c.reactions = Reactions::Expanded; break;
    }

    c.content_management = {};
    if (keyword_score(text, {"careful", "polished", "professional", "formal", "thoughtful", "edit", "revise"}) > 0 ||
        rng.chance(0.5)) {
        c.content_management.insert(ContentManagement::Edit);
    }
    if (keyword_score(text, {"private", "ephemeral", "fleeting", "temporary", "safe", "control", "remove"}) > 0 ||
        rng.chance(0.5)) {
        c.content_management.insert(ContentManagement::Delete);
    }

    switch (pick_best({keyword_score(text, {"real", "professional", "colleague", "friends", "family", "known",
                                             "coworker", "neighbor", "classmate"}),
                       keyword_score(text, {"handle", "alias", "persona", "fan", "gamer", "community", "creative",
                                             "hobby", "role"}),
                       keyword_score(text, {"anonymous", "stranger", "hidden", "secret", "confess", "unknown",
                                             "faceless", "incognito"})},
                      rng)) {
    case 0: c.identity = Identity::RealName; break;
    case 1: c.identity = Identity::Pseudonymous; break;
    default: c.identity = Identity::Anonymous; break;
    }

    c.messaging_types = {};
    if (keyword_score(text, {"private", "personal", "one-on-one", "intimate", "honest", "pair", "deep", "confid",
                             "whisper"}) > 0) {
        c.messaging_types.insert(MessagingType::OneToOne);
    }
    if (keyword_score(text, {"group", "collective", "party", "together", "crowd", "team", "circle", "gathering",
                             "friends", "community"}) > 0) {
        c.messaging_types.insert(MessagingType::Group);
    }
    if (c.messaging_types.empty()) {
        c.messaging_types.insert(rng.chance(0.5) ? MessagingType::OneToOne : MessagingType::Group);
    }

    c.ephemeral_enabled = pick_best({keyword_score(text, {"fleeting", "spontaneous", "drop-in", "moment", "temporary",
                                                           "brief", "transient", "passing", "night", "ephemeral",
                                                           "short"}),
                                     keyword_score(text, {"long", "lasting", "enduring", "recurring", "ongoing",
                                                           "routine", "archive", "permanent", "extended",
                                                           "regular"})},
                                    rng) == 0;

    c.discovery = pick_best({keyword_score(text, {"topic", "interest", "theme", "hobby", "knowledge", "learn", "share",
                                                   "passion", "subject"}),
                             keyword_score(text, {"trend", "popular", "viral", "hype", "famous", "crowd", "buzz",
                                                   "spotlight"})},
                            rng) == 0
                      ? Discovery::TopicBased
                      : Discovery::PopularityBased;

    c.networking_control = {};
    if (keyword_score(text, {"block", "safe", "boundar", "protect", "harass", "control", "restrict"}) > 0) {
        c.networking_control.insert(NetworkingControl::Block);
    }
    if (keyword_score(text, {"mute", "quiet", "calm", "noise", "filter", "moderate", "manage"}) > 0) {
        c.networking_control.insert(NetworkingControl::Mute);
    }

    const std::string control = utf8::to_lower_ascii(attrs.participation_control);
    if (keyword_score(control, {"invite", "invitation"}) > 0) {
        c.privacy_setting = PrivacySetting::InvitedOnly;
    } else {
        c.privacy_setting =
            pick_best({keyword_score(text, {"invite", "exclusive", "members only", "member", "closed", "select",
                                             "gated"}),
                       keyword_score(text, {"open", "anyone", "public", "free"}) + (open_space ? 1 : 0)},
                      rng) == 0
                ? PrivacySetting::InvitedOnly
                : PrivacySetting::ShowAll;
    }

    Rng size_rng(mix_seed(seed, stable_hash(text), 0x5157));
    c.user_count = population_from_text(text, size_rng);
    return c;
}

} // namespace metaspace
