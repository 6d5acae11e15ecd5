#include "metaspace/prompts.hpp"

#include <algorithm>

#include "metaspace/errors.hpp"

namespace metaspace {

namespace {

std::vector<PromptTemplate> build_library()
{
    std::vector<PromptTemplate> lib;
    auto add = [&lib](PromptId id, const char* name, const char* body) {
        auto slots = placeholders_in(body);
        lib.push_back({id, name, body, {slots.begin(), slots.end()}});
    };
    add(PromptId::MetaphorConversion, "metaphor_conversion", R"PROMPT(Given the metaphor keyword "${metaphorKeyword}", analyze it based on these attributes and return ONLY a JSON object with the following structure:
{
    "Atmosphere": "...",
    "GatheringType": "...",
    "ConnectingEnvironment": "...",
    "TemporalEngagement": "...",
    "CommunicationFlow": "...",
    "ActorType": "...",
    "ContentOrientation": "...",
    "ParticipationControl": "..."
  }

  Consider these definitions when analyzing:
  - Atmosphere: emotional and sensory qualities of the space
  - GatheringType: reason people come together (thematic or relation-based)
  - ConnectingEnvironment: how the space facilitates connections
  - TemporalEngagement: duration and frequency of participation
  - CommunicationFlow: interaction style and patterns
  - ActorType: type of social identity individuals adopt
  - ContentOrientation: dominant focus of communication
  - ParticipationControl: extent of visibility and interaction management

  Return ONLY the JSON object, no additional text or explanation.
)PROMPT");
    add(PromptId::FeatureMapping, "feature_mapping", R"PROMPT(Based on these attributes: ${descr.llm_descr}, 
provide social media features organized in the following format:

LV1: Network Structure
- **Timeline Types**: Define how content is organized for users.
- Feed-based: Aggregates posts into a single scrolling interface (e.g., Facebook, Instagram).
- Chat-based: Segments conversations into thematic spaces or threads by using messages instead of posts (e.g., Slack, Discord).
- **Content Order**: Specifies the arrangement of content users see.
- Chronological: Content is displayed in the order it is posted (e.g., Twitter's "Latest Tweets" view).
- Algorithmic: Content is displayed based on relevance or popularity (e.g., Instagram, TikTok).
- **Connection Type**: Defines how users are connected and interact.
- Network-based: Connections between individuals such as friends or followers (e.g., Instagram, Twitter).
- Group-based: Collective participation within a predefined community (e.g., Reddit, Slack channels).
- **User Count**: Defines the exact number of users on the platform. Don't just pick middle number. think about attributes and the number of users it should have. The number should be minimum 5, and maximum 100. 

LV2: Interaction Mechanisms
- **Commenting**: Determines how users can respond to content.
- Flat Threads: Comments are displayed as a single-layered list.
- Nested Threads: Replies to comments are structured in a hierarchy.
- **Reactions**: Enables users to express their opinion on content.
- Like: A single positive acknowledgment (e.g., heart on Instagram posts).
- Upvote/Downvote: Allows for ranking content positively or negatively (e.g., Reddit).
- Expanded Reactions: Use of emojis such as "love," "haha," "angry," etc. (e.g., Facebook's reaction system).
- **Content Management**: Outlines options for editing or removing posts.
- Edit: Modify content after posting (e.g., X/Twitter edit feature for subscribers).
- Delete: Permanently remove content from the platform.
- **Account Types**: Defines privacy and accessibility. (multiple can be selected)
- Public: Content is accessible to everyone.
- Private (one-way): Follower requests are required, but users don't need mutual consent (e.g., Instagram private accounts).
- Private (mutual): Both parties must agree to connect (e.g., LinkedIn).
- **Identity Options**: Specifies how users represent themselves.
- Real-name: Users must use their real identity (e.g., LinkedIn).
- Pseudonymous: Users can use aliases (e.g., Instagram).
- Anonymous: Users are not identified (e.g., 4chan, Whisper).
- **Messaging**:
- Types: (multiple can be selected)
  - Private one-on-one (e.g., Facebook Messenger) 
  - group messaging (e.g., WhatsApp groups).
- Audience: You can message with people who have connection to you or everyone.
  - With connection 
  - everyone.

LV3: Advanced Features & Customization
- **Ephemeral Content**: Temporary content that disappears after a set time.
- Enabled: Platforms like Snapchat or Instagram Stories. (just reply with Yes or No)
- **Content Visibility Control**: Defines audience customization options. (choose between Public or Private)
- Public: Content is visible to all users
- Private: Content visibility is restricted
- **Content Discovery**: Methods of introducing users to new content.
- Recommendations:
- Topic-based Suggestions: Recommendations based on user interests (e.g., Pinterest).
- Popularity-based Suggestions: Recommendations based on trending content (e.g., TikTok's "For You" page).
- **Networking Control**: Tools to manage social interactions. (multiple can be selected)
- Block: Prevents another user from interacting with you
- Mute: Silences another user without notifying them
- **Privacy Settings**: Configures boundaries for interactions.
- Invited Content Only: Access is limited to invited users (e.g., Slack).
- Show All: Content is publicly visible to anyone (e.g., Instagram).

The answer structure should look like something like this:

LV1: Network Structure
Timeline Types: Chat-based
Content Order: Algorithmic
and so on...

Then at the end of the response, can you add your reasoning for the answer? Give specific reasoning for all your selections.

Do not use bolded text or []
)PROMPT");
    add(PromptId::ChatDyadic, "chat_dyadic", R"PROMPT(There is an ongoing conversation between two people. The last messages were:
"${formattedMessages}"

Context:
- Your user_id is ${user_id}.
- There is 1 other person in the chat.
- Your closeness level to the other person (1-10) is: ${closeness_levels}.

Goals:
- Respond naturally and personally to the last message.
- Do not repeat phrases or sentiments from earlier messages.
- You can use common chat shortforms or slangs like wby, love, luv, ngl, lol, lmao
- Try to keep the conversation engaging and personal. You may ask a follow-up question, express your opinion, or share a new idea.
- Limit your response to 1-2 short sentences, with no more than 12 words per message.
- Build on the conversation and ask deeper questions on the topic being discussed. Ensure the conversation flows naturally and builds upon the core topic in the last messages. For example, if someone is talking about food, give an example of a specific food you just ate. If someone asks "what's up?", reply with what you did that day (e.g., attended a class on business studies).
- About 10% of the time, include a short off-topic comment.
- If there is any question in the chat, reply to it before asking more questions.

Now, generate the next message as a single bubble.
)PROMPT");
    add(PromptId::ChatGroup, "chat_group", R"PROMPT(There is an ongoing group chat. The last messages were:
"${formattedMessages}"

Context:
- Your user_id is ${user_id}.
- There are ${people.length} other people in the chat.
- Your closeness levels to them (1-10) are: ${closeness_levels}.

Goals:
- Respond naturally, but keep in mind this is a group conversation. You may reference others, introduce new topics, or ask general questions.
- Do not repeat phrases or sentiments from earlier messages.
- Keep the conversation varied. Introduce new angles, switch the tone, or share a new topic.
- Limit your response to 1-2 short sentences, with no more than 12 words per message.
- Avoid using an exclamation mark unless absolutely necessary.
- Build on the conversation and ask deeper questions on the topic being discussed. Ensure the conversation flows naturally and builds upon the core topic in the last messages. For example, if someone is talking about food, give an example of a specific food you just ate. If someone asks "what's up?", reply with what you did that day (e.g., attended a class on business studies).
- About 10% of the time, include a short off-topic comment.
- If there is any question in the chat, reply to it before asking more questions.

Now, generate the next message(s) as separate bubbles.
)PROMPT");
    add(PromptId::PostPersonal, "post_personal", R"PROMPT(You are a user on social media platforms like ${platforms}.
When writing a new post, mimic the typical style of that platform in terms of:
- Length (120-150 characters, max three sentences) and tone (avoid exclamation marks unless necessary)
- Formatting (informal, no bullet points, no bold/italic, use natural paragraph breaks)
- Hashtag use (use minimal, aligning to the platform's culture, don't overdo it)
Do NOT sound like a corporate announcement or a generic AI.

POST CONTENT REQUIREMENTS:
0. The post content MUST reflect topics related to ${descr.llm_descr.ContentOrientation} that may arise from interactions among ${descr.llm_descr.ActorType}.

1. Select a tone from the list (${tone}) that best matches the style of ${descr.llm_descr.CommunicationFlow}
2. Pick one user goal from ${user_roles} and generate a post based on the behavior associated with that goal.
3. Your post must be significantly different from your last three posts in:
   - Content, structure, storyline, length, and phrasing
   - Lexical overlap: below 20%
   - Semantic similarity: below 0.2 cosine similarity with past 3 posts. Use a completely different sentence structure.
   The contents of some of your previous posts are: ${last_posts}.
4. Structure the post clearly with natural newlines-avoid dense blocks of text.
5. Keep the contents engaging and relatable.
6. Avoid generic tone if your last two posts were already generic-add specificity (names, places, small moments).
7. Do not end the post with a question.
8. Do NOT start the sentence with words like "JUST", "FINALLY", "FOUND", "HAD", "CURRENTLY", "CAME ACORSS".

Now, generate a new post that sticks to a single theme and meets all of the above criteria.
)PROMPT");
    add(PromptId::PostPersonalEphemeral, "post_personal_ephemeral", R"PROMPT(You are a user on social media platforms like ${platforms}.
You are about to make a new **ephemeral** post on social media. These are time-sensitive posts and will only be up for 24 hours.
When writing a new ephemeral post, mimic the typical style of that platform in terms of:
- Short and concise length (30~40 characters, max two sentences) 
- Informal, spontaneous, or unpolished tone (avoid exclamation marks unless necessary)
- Personal and emotionally expressive
- Formatting (no bullet points, no bold/italic, use natural paragraph breaks)
Do NOT sound like a corporate announcement or a generic AI. 

POST CONTENT REQUIREMENTS: 
0. The post content MUST reflect topics related to content orientation in ${descr.llm_descr} that may arise from interactions among actor type in ${descr.llm_descr}.           
1. Select a tone from the list (${tone}) that best matches the style of ${descr.llm_descr.CommunicationFlow}
2. "Pick one user goal from ${user_roles} and generate a post based on the behavior associated with that goal.
3. Your post must be significantly different from your last three posts in:
- Content, structure, storyline, length, and phrasing
- Lexical overlap: below 20%
- Semantic similarity: below 0.2 cosine similarity with past 3 posts. Use a completely different sentence structure. The contents of some of your previous posts are:${last_posts}. 
4. Structure the post clearly with natural newlines-avoid dense blocks of text.
5. Keep the contents engaging and relatable.
6. Avoid generic tone if your last two posts were already generic-add specificity (names, places, small moments).
7. Do not end the post with a question.
8. Do NOT start the sentence with words like "JUST", "FINALLY", "FOUND", "HAD", "CURRENTLY", "CAME ACORSS".

Now, generate a new post that sticks to a single theme and meets all of the above criteria.
)PROMPT");
    add(PromptId::PostChannel, "post_channel", R"PROMPT(You are about to make a new post in a community.
The community name is ${sel_comm.comm_name}. This is a community with likeminded people who are passionate about ${sel_comm.comm_bio}.
You are a user on social media platforms like ${platforms}.
When writing a new post, mimic the typical style of that platform in terms of:
- Length (120-150 characters, max three sentences) and tone (avoid exclamation marks unless necessary)
- Formatting (informal, no bullet points, no bold/italic, use natural paragraph breaks)
- Hashtag use (use minimal, aligning to the platform's culture, don't overdo it)
Do NOT sound like a corporate announcement or a generic AI.

POST CONTENT REQUIREMENTS:
0. The post content MUST reflect topics related to ${descr.llm_descr.ContentOrientation} that may arise from interactions among ${descr.llm_descr.ActorType}.

1. Your post must be aligned with the community topic.
2. Select a tone from the list (${tone}) that best matches the style of ${descr.llm_descr.CommunicationFlow}
3. Pick one theme among the user interests: ${user_interests}. Focus on one clear theme. Do not mix unrelated ideas.
4. Pick one user goal from ${user_roles} and generate a post based on the behavior associated with that goal.
5. Your post must be significantly different from your last three posts in:
   - Content, structure, storyline, length, and phrasing
   - Lexical overlap: below 20%
   - Semantic similarity: below 0.2 cosine similarity with past 3 posts. Use a completely different sentence structure.
   The contents of some of your previous posts are: ${last_posts}.
6. Structure the post clearly with natural newlines-avoid dense blocks of text.
7. Keep the contents engaging and relatable.
8. Avoid generic tone if your last two posts were already generic-add specificity (names, places, small moments).
9. Do not end the post with a question.
10. Do NOT start the sentence with words like "JUST", "FINALLY", "FOUND", "HAD", "CURRENTLY", "CAME ACORSS".

Now, generate a new post that sticks to a single theme and meets all of the above criteria.
)PROMPT");
    add(PromptId::PostChannelEphemeral, "post_channel_ephemeral", R"PROMPT(You are about to make a new **ephemeral post** on social media. These are time-sensitive posts and will only be up for 24 hours.
The community name is ${sel_comm.comm_name}. This is a community with likeminded people who are passionate about ${sel_comm.comm_bio}.

You are a user on social media platforms like ${platforms}.
When writing a new ephemeral post, mimic the typical style of that platform in terms of:
- Short and concise length (30~40 characters, max two sentences) 
- Informal, spontaneous, or unpolished tone (avoid exclamation marks unless necessary)
- Personal and emotionally expressive
- Formatting (no bullet points, no bold/italic, use natural paragraph breaks)
Do NOT sound like a corporate announcement or a generic AI. 

POST CONTENT REQUIREMENTS: 
0. The post content MUST reflect topics related to ${descr.llm_descr.ContentOrientation} that may arise from interactions among ${descr.llm_descr.ActorType}.           
1. Your post must be aligned with the community topic.
2. Select a tone from the list (${tone}) that best matches the style of ${descr.llm_descr.CommunicationFlow}
3. Pick one theme among the user iterests: ${user_interests}. Focus on one clear theme. Do not mix unrelated ideas.
4. "Pick one user goal from ${user_roles} and generate a post based on the behavior associated with that goal.
5. Your post must be significantly different from your last three posts in:
- Content, structure, storyline, length, and phrasing
- Lexical overlap: below 20%
- Semantic similarity: below 0.2 cosine similarity with past 3 posts. Use a completely different sentence structure. The contents of some of your previous posts are:${last_posts}. 
6. Structure the post clearly with natural newlines-avoid dense blocks of text.
7. Keep the contents engaging and relatable.
8. Avoid generic tone if your last two posts were already generic-add specificity (names, places, small moments).
9. Do not end the post with a question.
10. Do NOT start the sentence with words like "JUST", "FINALLY", "FOUND", "HAD", "CURRENTLY", "CAME ACORSS".

Now, generate a new post that sticks to a single theme and meets all of the above criteria.
)PROMPT");
    add(PromptId::JoinChannel, "join_channel", R"PROMPT(You want to join a new community. Based on your personality, choose ONE from the list below.
Be direct and reply with ONLY the community ID of the selected community.

Available communities:
${communities}
)PROMPT");
    add(PromptId::AgentSystem, "agent_system", R"PROMPT(You are an AI that generates social media user profiles based on metaphorical descriptions.
The user has the goal of "${goalRole.goal}" and plays the role of "${goalRole.role}".
Create a personality that embodies these metaphorical characteristics:
LLM Description: ${descr.llm_descr}
)PROMPT");
    add(PromptId::AgentUser, "agent_user", R"PROMPT(Create a social media user profile that embodies the goal of "${goalRole.goal}" and the role of "${goalRole.role}".

USERNAME REQUIREMENTS:
- Strictly follow this identity style: ${identity_prompt}
- CRUCIAL: If the identity type is psedononymous, the username MUST be somehow related to the metaphorical theme '${descriptions.keyword}'. It doesn't need to include the metaphor keyword itself.
- Please follow the universal and standard naming convention used in general social media.
- ABSOLUTELY ESSENTIAL: The username MUST be different from these existing names:
  ${existingUserNames}

Generate a JSON object with these required fields:
{
  "id_name": "A unique identifier starting with 'ID_'",
  "user_name": "A username strictly adhering to the USERNAME REQUIREMENTS above.",
  "email": "A thematic email address, can be related to the metaphor or username strategy",
  "password": "A strong password",
  "user_bio": "A concise (1-3 sentences, approx. 150 characters), engaging social media bio that reflects the general writing style of typical social media bios. This bio should relate to ${descr.llm_descr.ContentOrientation} content and reflect the vibe of ${descr.llm_descr.Atmosphere}, where users are gathered around the ${descr.llm_descr.GatheringType} theme. This bio should NOT weave in the metaphorical theme of '${descriptions.keyword}' or metaphor. It MUST be distinct from these existing bios: ${existingUserBios}. No emojis.",
  "profile_picture": "A URL using https://i.pravatar.cc/120?u= with a random parameter",
  "posting_trait": "Float between 0-1",
  "commenting_trait": "Float between 0.5-1",
  "reacting_trait": "Float between 0.5-1",
  "messaging_trait": "Float between 0.5-1",
  "updating_trait": "Float between 0-1",
  "comm_trait": "Float between 0-1",
  "notification_trait": "Float between 0-1",
  "interests": ["At least 3 interests from the predefined list that align with ${descr.llm_descr.ContentOrientation} contents"],
  "persona_name": "Name the user's personality type that appears from ${descr.llm_descr.ActorType} in ${descr.llm_descr.ConnectingEnvironment} social connecting environment. Should NOT be making the real name.",
  "social_group_name": "A group name aligned with the metaphor. Make sure it ranges in tone, length and nuance."
}

Ensure the personality traits and interests align with the metaphorical description.
The predefined interests list: ["Animals", "Art & Design", "Automobiles", "DIY & Crafting", "Education", "Fashion", "Finance", "Fitness", "Food", "Gaming", "History & Culture", "Lifestyle", "Literature", "Movies", "Music", "Nature", "Personal Development", "Photography", "Psychology", "Religion", "Social", "Sports", "Technology", "Travel", "Wellness"]

Return only the JSON object.
)PROMPT");
    add(PromptId::Comment, "comment", R"PROMPT(You are about to comment on a post. The content of the post is: "${sel_post.content}".
On a scale of 1 to 10, your closeness level with the person is "${closeness}".
Generate a comment for the post that is a one liner 60% of the time.
Leave an emoji only when it is absolutely necessary, not otherwise.
Vary your mood slightly: supportive, curious, witty, or reflective, but deliver it in a calm nonchalant way-don't be upbeat every time.
Dive deep into the post and talk about specific things related to the post.
Switch it up with small comments like "wow, good read" or "interesting perspective, I was thinking about this the other day".
Avoid using an exclamation mark unless absolutely necessary.
Ensure your phrasing is <30% lexical overlap with the previous three comments.
)PROMPT");
    return lib;
}

const std::vector<PromptTemplate>& library()
{
    static const std::vector<PromptTemplate> lib = build_library();
    return lib;
}

bool slot_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
}

// Finds the next well-formed `${name}` at or after `from`.
bool next_slot(std::string_view body, std::size_t from, std::size_t& start, std::size_t& end, std::string_view& name)
{
    for (std::size_t p = body.find("${", from); p != std::string_view::npos; p = body.find("${", p + 2)) {
        std::size_t q = p + 2;
        while (q < body.size() && slot_char(body[q])) {
            ++q;
        }
        if (q < body.size() && body[q] == '}' && q > p + 2) {
            start = p;
            end = q + 1;
            name = body.substr(p + 2, q - p - 2);
            return true;
        }
    }
    return false;
}

std::string defuse(std::string text)
{
    for (std::size_t p = text.find("${"); p != std::string::npos; p = text.find("${", p + 3)) {
        text.insert(p + 1, " ");
    }
    return text;
}

} // namespace

std::span<const PromptTemplate> all_prompts() { return library(); }

const PromptTemplate& prompt(PromptId id) { return library().at(static_cast<std::size_t>(id)); }

const PromptTemplate* find_prompt(std::string_view name)
{
    for (const auto& t : library()) {
        if (t.name == name) {
            return &t;
        }
    }
    return nullptr;
}

std::vector<std::string> placeholders_in(std::string_view body)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string_view name;
    for (std::size_t from = 0; next_slot(body, from, start, end, name); from = end) {
        if (std::find(out.begin(), out.end(), name) == out.end()) {
            out.emplace_back(name);
        }
    }
    return out;
}

std::string render_binding(const Binding& binding)
{
    if (const auto* s = std::get_if<std::string>(&binding)) {
        return *s;
    }
    std::string out;
    for (const auto& item : std::get<std::vector<std::string>>(binding)) {
        if (!out.empty()) {
            out += ", ";
        }
        out += item;
    }
    return out;
}

std::string substitute(std::string_view body, const Bindings& bindings)
{
    std::string out;
    out.reserve(body.size() * 2);
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t copied = 0;
    std::string_view name;
    for (std::size_t from = 0; next_slot(body, from, start, end, name); from = end) {
        auto it = bindings.find(name);
        if (it == bindings.end()) {
            throw PromptError("UnboundPlaceholder", std::string(name), "no binding for placeholder " + std::string(name));
        }
        out.append(body.substr(copied, start - copied));
        out += defuse(render_binding(it->second));
        copied = end;
    }
    out.append(body.substr(copied));
    return defuse(std::move(out));
}

std::string substitute(const PromptTemplate& tmpl, const Bindings& bindings) { return substitute(tmpl.body, bindings); }

} // namespace metaspace
