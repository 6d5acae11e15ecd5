#include "metaspace/events.hpp"

#include <array>
#include <istream>
#include <ostream>

#include "metaspace/errors.hpp"

namespace metaspace {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, kEventKindCount> kKindNames = {
    "AddPost",          "AddChannelPost",     "AddEphemeralContent", "AddCommentOnPost",  "AddCommentOnComment",
    "React",            "StartNewChat",       "StartNewGroupChat",   "SendMessage1to1",   "SendMessageGroup",
    "CreateChannel",    "JoinChannel",        "ReadUnreadMessages",  "SendFriendRequest", "AcceptFriendRequest",
    "UpdateRelation",   "UpdateRestriction",  "UpdatePostVisibility", "Genesis",          "RegisterParticipant",
    "EditPost",         "DeletePost",
};

template <typename T>
constexpr std::size_t index_of()
{
    return Payload(T{}).index();
}

std::string_view relation_name(RelationChange c)
{
    switch (c) {
    case RelationChange::Follow: return "follow";
    case RelationChange::Unfollow: return "unfollow";
    case RelationChange::Unfriend: return "unfriend";
    }
    return "?";
}

RelationChange parse_relation(const std::string& s)
{
    if (s == "follow") return RelationChange::Follow;
    if (s == "unfollow") return RelationChange::Unfollow;
    if (s == "unfriend") return RelationChange::Unfriend;
    throw PersistenceError("MalformedLog", "change", "unknown relation change '" + s + "'");
}

std::string_view control_name(NetworkingControl c) { return c == NetworkingControl::Block ? "block" : "mute"; }

NetworkingControl parse_control(const std::string& s)
{
    if (s == "block") return NetworkingControl::Block;
    if (s == "mute") return NetworkingControl::Mute;
    throw PersistenceError("MalformedLog", "control", "unknown control '" + s + "'");
}

std::string_view visibility_name(Visibility v) { return v == Visibility::Public ? "public" : "private"; }

Visibility parse_visibility(const std::string& s)
{
    if (s == "public") return Visibility::Public;
    if (s == "private") return Visibility::Private;
    throw PersistenceError("MalformedLog", "visibility", "unknown visibility '" + s + "'");
}

template <typename T>
std::optional<T> opt(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::nullopt;
    }
    return it->get<T>();
}

ordered_json closeness_json(const std::map<ActorPair, int>& m)
{
    ordered_json out = ordered_json::array();
    for (const auto& [pair, c] : m) {
        out.push_back({pair.first, pair.second, c});
    }
    return out;
}

std::map<ActorPair, int> closeness_from(const json& j)
{
    std::map<ActorPair, int> out;
    for (const auto& e : j) {
        out[{e.at(0).get<ActorId>(), e.at(1).get<ActorId>()}] = e.at(2).get<int>();
    }
    return out;
}

ordered_json pairs_json(const std::set<ActorPair>& s)
{
    ordered_json out = ordered_json::array();
    for (const auto& [a, b] : s) {
        out.push_back({a, b});
    }
    return out;
}

std::set<ActorPair> pairs_from(const json& j)
{
    std::set<ActorPair> out;
    for (const auto& e : j) {
        out.insert({e.at(0).get<ActorId>(), e.at(1).get<ActorId>()});
    }
    return out;
}

struct PayloadWriter
{
    ordered_json operator()(const GenesisPayload& p) const
    {
        ordered_json roster = ordered_json::array();
        for (const auto& a : p.roster) {
            roster.push_back(to_json(a));
        }
        return {{"keyword", p.keyword},
                {"attributes", to_json(p.attrs)},
                {"config", format_config(p.config)},
                {"rationale", p.rationale},
                {"roster", std::move(roster)},
                {"graph", to_json(p.graph)},
                {"seed", p.seed},
                {"minutes_per_tick", p.minutes_per_tick}};
    }
    ordered_json operator()(const PostPayload& p) const
    {
        return {{"id", p.id},
                {"text", p.text},
                {"channel", p.channel ? ordered_json(*p.channel) : ordered_json(nullptr)},
                {"ephemeral", p.ephemeral}};
    }
    ordered_json operator()(const CommentPayload& p) const
    {
        return {{"id", p.id},
                {"post", p.post},
                {"parent", p.parent ? ordered_json(*p.parent) : ordered_json(nullptr)},
                {"text", p.text}};
    }
    ordered_json operator()(const ReactPayload& p) const { return {{"post", p.post}, {"token", p.token}}; }
    ordered_json operator()(const StartChatPayload& p) const
    {
        return {{"id", p.id},
                {"participants", p.participants},
                {"closeness", closeness_json(p.closeness)},
                {"message", p.message},
                {"text", p.text},
                {"off_topic", p.off_topic}};
    }
    ordered_json operator()(const MessagePayload& p) const
    {
        return {{"chat", p.chat}, {"id", p.id}, {"text", p.text}, {"off_topic", p.off_topic}};
    }
    ordered_json operator()(const CreateChannelPayload& p) const
    {
        return {{"id", p.id}, {"name", p.name}, {"bio", p.bio}};
    }
    ordered_json operator()(const JoinChannelPayload& p) const { return {{"channel", p.channel}}; }
    ordered_json operator()(const ReadPayload& p) const { return {{"chats", p.chats}}; }
    ordered_json operator()(const FriendRequestPayload& p) const { return {{"target", p.target}}; }
    ordered_json operator()(const AcceptFriendPayload& p) const
    {
        return {{"requester", p.requester}, {"closeness", p.closeness}};
    }
    ordered_json operator()(const RelationPayload& p) const
    {
        return {{"target", p.target}, {"change", relation_name(p.change)}};
    }
    ordered_json operator()(const RestrictionPayload& p) const
    {
        return {{"target", p.target}, {"control", control_name(p.control)}, {"active", p.active}};
    }
    ordered_json operator()(const VisibilityPayload& p) const
    {
        return {{"post", p.post}, {"visibility", visibility_name(p.visibility)}};
    }
    ordered_json operator()(const RegisterPayload& p) const
    {
        return {{"id", p.id}, {"id_name", p.id_name}, {"user_name", p.user_name}, {"closeness", p.closeness}};
    }
    ordered_json operator()(const EditPostPayload& p) const { return {{"post", p.post}, {"text", p.text}}; }
    ordered_json operator()(const DeletePostPayload& p) const { return {{"post", p.post}}; }
};

Payload read_payload(EventKind kind, const json& j)
{
    switch (kind) {
    case EventKind::Genesis: {
        GenesisPayload p;
        p.keyword = j.at("keyword").get<std::string>();
        p.attrs = parse_attributes(j.at("attributes").dump());
        p.config = parse_feature_response(j.at("config").get<std::string>()).config;
        p.rationale = j.value("rationale", "");
        for (const auto& a : j.at("roster")) {
            p.roster.push_back(profile_from_json(a));
        }
        p.graph = graph_from_json(j.at("graph"));
        p.seed = j.at("seed").get<std::uint64_t>();
        p.minutes_per_tick = j.value("minutes_per_tick", 5);
        return p;
    }
    case EventKind::AddPost:
    case EventKind::AddChannelPost:
    case EventKind::AddEphemeralContent: {
        PostPayload p;
        p.id = j.value("id", PostId{0});
        p.text = j.at("text").get<std::string>();
        p.channel = opt<ChannelId>(j, "channel");
        p.ephemeral = j.value("ephemeral", kind == EventKind::AddEphemeralContent);
        return p;
    }
    case EventKind::AddCommentOnPost:
    case EventKind::AddCommentOnComment: {
        CommentPayload p;
        p.id = j.value("id", CommentId{0});
        p.post = j.at("post").get<PostId>();
        p.parent = opt<CommentId>(j, "parent");
        p.text = j.at("text").get<std::string>();
        return p;
    }
    case EventKind::React: return ReactPayload{j.at("post").get<PostId>(), j.at("token").get<std::string>()};
    case EventKind::StartNewChat:
    case EventKind::StartNewGroupChat: {
        StartChatPayload p;
        p.id = j.value("id", ChatId{0});
        p.participants = j.at("participants").get<std::vector<ActorId>>();
        if (auto c = j.find("closeness"); c != j.end()) {
            p.closeness = closeness_from(*c);
        }
        p.message = j.value("message", MessageId{0});
        p.text = j.at("text").get<std::string>();
        p.off_topic = j.value("off_topic", false);
        return p;
    }
    case EventKind::SendMessage1to1:
    case EventKind::SendMessageGroup:
        return MessagePayload{j.at("chat").get<ChatId>(), j.value("id", MessageId{0}), j.at("text").get<std::string>(),
                              j.value("off_topic", false)};
    case EventKind::CreateChannel:
        return CreateChannelPayload{j.value("id", ChannelId{0}), j.at("name").get<std::string>(),
                                    j.value("bio", "")};
    case EventKind::JoinChannel: return JoinChannelPayload{j.at("channel").get<ChannelId>()};
    case EventKind::ReadUnreadMessages: return ReadPayload{j.value("chats", std::vector<ChatId>{})};
    case EventKind::SendFriendRequest: return FriendRequestPayload{j.at("target").get<ActorId>()};
    case EventKind::AcceptFriendRequest:
        return AcceptFriendPayload{j.at("requester").get<ActorId>(), j.value("closeness", kFriendClosenessMin)};
    case EventKind::UpdateRelation:
        return RelationPayload{j.at("target").get<ActorId>(), parse_relation(j.at("change").get<std::string>())};
    case EventKind::UpdateRestriction:
        return RestrictionPayload{j.at("target").get<ActorId>(), parse_control(j.at("control").get<std::string>()),
                                  j.value("active", true)};
    case EventKind::UpdatePostVisibility:
        return VisibilityPayload{j.at("post").get<PostId>(), parse_visibility(j.at("visibility").get<std::string>())};
    case EventKind::RegisterParticipant:
        return RegisterPayload{j.value("id", ActorId{0}), j.at("id_name").get<std::string>(),
                               j.value("user_name", j.at("id_name").get<std::string>()), j.value("closeness", 5)};
    case EventKind::EditPost: return EditPostPayload{j.at("post").get<PostId>(), j.at("text").get<std::string>()};
    case EventKind::DeletePost: return DeletePostPayload{j.at("post").get<PostId>()};
    }
    throw PersistenceError("MalformedLog", "kind", "unknown event kind");
}

} // namespace

std::optional<ActionKind> as_action(EventKind k)
{
    if (static_cast<std::size_t>(k) < kActionCount) {
        return static_cast<ActionKind>(k);
    }
    return std::nullopt;
}

std::string_view event_kind_name(EventKind k) { return kKindNames.at(static_cast<std::size_t>(k)); }

std::optional<EventKind> parse_event_kind(std::string_view name)
{
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) {
            return static_cast<EventKind>(i);
        }
    }
    return std::nullopt;
}

std::size_t payload_index(EventKind kind)
{
    switch (kind) {
    case EventKind::Genesis: return index_of<GenesisPayload>();
    case EventKind::AddPost:
    case EventKind::AddChannelPost:
    case EventKind::AddEphemeralContent: return index_of<PostPayload>();
    case EventKind::AddCommentOnPost:
    case EventKind::AddCommentOnComment: return index_of<CommentPayload>();
    case EventKind::React: return index_of<ReactPayload>();
    case EventKind::StartNewChat:
    case EventKind::StartNewGroupChat: return index_of<StartChatPayload>();
    case EventKind::SendMessage1to1:
    case EventKind::SendMessageGroup: return index_of<MessagePayload>();
    case EventKind::CreateChannel: return index_of<CreateChannelPayload>();
    case EventKind::JoinChannel: return index_of<JoinChannelPayload>();
    case EventKind::ReadUnreadMessages: return index_of<ReadPayload>();
    case EventKind::SendFriendRequest: return index_of<FriendRequestPayload>();
    case EventKind::AcceptFriendRequest: return index_of<AcceptFriendPayload>();
    case EventKind::UpdateRelation: return index_of<RelationPayload>();
    case EventKind::UpdateRestriction: return index_of<RestrictionPayload>();
    case EventKind::UpdatePostVisibility: return index_of<VisibilityPayload>();
    case EventKind::RegisterParticipant: return index_of<RegisterPayload>();
    case EventKind::EditPost: return index_of<EditPostPayload>();
    case EventKind::DeletePost: return index_of<DeletePostPayload>();
    }
    return std::variant_npos;
}

ordered_json to_json(const SocialGraph& graph)
{
    return {{"size", graph.size},
            {"follows", pairs_json(graph.follows)},
            {"friends", pairs_json(graph.friends)},
            {"closeness", closeness_json(graph.closeness)}};
}

SocialGraph graph_from_json(const json& j)
{
    SocialGraph g;
    g.size = j.at("size").get<std::size_t>();
    g.follows = pairs_from(j.at("follows"));
    g.friends = pairs_from(j.at("friends"));
    g.closeness = closeness_from(j.at("closeness"));
    return g;
}

ordered_json payload_to_json(const Payload& payload) { return std::visit(PayloadWriter{}, payload); }

Payload payload_from_json(EventKind kind, const json& j)
{
    if (!j.is_object()) {
        throw PersistenceError("MalformedLog", "payload", "payload must be an object");
    }
    try {
        return read_payload(kind, j);
    } catch (const json::exception& e) {
        throw PersistenceError("MalformedLog", "payload", std::string(event_kind_name(kind)) + ": " + e.what());
    }
}

ordered_json to_json(const SimEvent& event)
{
    return {{"tick", event.tick},
            {"seq", event.seq},
            {"actor", event.actor == kSystemActor ? ordered_json(nullptr) : ordered_json(event.actor)},
            {"kind", event_kind_name(event.kind)},
            {"payload", payload_to_json(event.payload)}};
}

SimEvent event_from_json(const json& j)
{
    try {
        SimEvent e;
        e.tick = j.at("tick").get<std::uint64_t>();
        e.seq = j.at("seq").get<std::uint64_t>();
        e.actor = j.at("actor").is_null() ? kSystemActor : j.at("actor").get<ActorId>();
        auto kind = parse_event_kind(j.at("kind").get<std::string>());
        if (!kind) {
            throw PersistenceError("MalformedLog", "kind", "unknown event kind " + j.at("kind").dump());
        }
        e.kind = *kind;
        e.payload = payload_from_json(e.kind, j.at("payload"));
        return e;
    } catch (const json::exception& ex) {
        throw PersistenceError("MalformedLog", "event", ex.what());
    }
}

std::string to_line(const SimEvent& event) { return to_json(event).dump(); }

SimEvent parse_line(std::string_view line)
{
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
        throw PersistenceError("MalformedLog", "line", "not a JSON object");
    }
    return event_from_json(j);
}

void write_log(std::ostream& out, const std::vector<SimEvent>& events)
{
    for (const auto& e : events) {
        out << to_line(e) << '\n';
    }
}

std::vector<SimEvent> read_log(std::istream& in)
{
    std::vector<SimEvent> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            out.push_back(parse_line(line));
        } catch (const Error& e) {
            throw PersistenceError("MalformedLog", std::to_string(number),
                                   "line " + std::to_string(number) + ": " + e.what());
        }
    }
    return out;
}

} // namespace metaspace
