#include "metaspace/stub_provider.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "metaspace/errors.hpp"
#include "metaspace/population.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/taxonomy.hpp"
#include "metaspace/text_metrics.hpp"
#include "metaspace/utf8.hpp"

namespace metaspace {

namespace {

using Pool = std::vector<std::string>;

Pool split_pool(std::string_view words)
{
    Pool out;
    std::istringstream in{std::string(words)};
    for (std::string w; in >> w;) {
        std::replace(w.begin(), w.end(), '_', ' ');
        out.push_back(std::move(w));
    }
    return out;
}

const Pool& openers()
{
    static const Pool p = split_pool(
        "spent tried walked noticed loved watched cooked painted biked explored sketched learned booked planted "
        "baked visited hosted joined started wrapped picked caught wrote read built fixed mapped swapped tested "
        "traded shared brewed hiked danced sang stitched framed filmed recorded grabbed borrowed repaired sorted "
        "packed unpacked ordered tasted skipped chased rearranged cleaned organized practiced rehearsed studied "
        "crafted assembled decorated toasted photographed collected gathered patched polished restored measured "
        "drafted edited printed mailed sent carried dragged lifted pushed pulled spotted heard smelled remembered "
        "missed celebrated welcomed greeted thanked invited followed admired reviewed ranked sampled");
    return p;
}

const Pool& adjectives()
{
    static const Pool p = split_pool(
        "quiet golden rusty crooked humid breezy mellow bright dusty velvet crisp tangled hazy sleepy loud lucky "
        "odd tiny massive glossy muddy silver amber scarlet frosty sunny rainy windy smoky salty bitter sweet sour "
        "spicy tender fragile sturdy wobbly shiny faded vintage modern clumsy graceful stubborn gentle restless "
        "curious patient eager brave shy proud weary cheerful moody noisy silent slow speedy warm chilly cozy "
        "spacious cramped crowded empty hidden secret forgotten familiar strange peculiar ordinary unusual rare "
        "classic fresh stale soggy crunchy fluffy prickly smooth rough heavy light narrow wide tall short ancient "
        "elegant rugged scruffy tidy messy lavish humble cosmic electric mossy sandy rocky leafy floral minty");
    return p;
}

const Pool& nouns()
{
    static const Pool p = split_pool(
        "notebook lantern bicycle teapot umbrella staircase window balcony garden sandwich pancake noodle dumpling "
        "taco playlist record guitar drum violin sketchbook canvas easel camera tripod lens puzzle chessboard "
        "marble pebble seashell feather blanket pillow sweater scarf boots jacket backpack suitcase ticket postcard "
        "letter journal recipe kettle skillet oven muffin croissant bagel pretzel lemonade smoothie espresso "
        "latte cocoa porridge salad curry omelette burrito waffle sunflower cactus fern orchid tulip maple acorn "
        "pinecone river meadow hillside cliff canyon glacier island harbor lighthouse pier boardwalk alley rooftop "
        "courtyard attic basement workshop studio library bookstore bakery market arcade stadium theater museum "
        "gallery station tram ferry scooter skateboard kayak tent campfire marshmallow firefly owl fox rabbit "
        "puppy kitten parrot goldfish hamster turtle beetle dragonfly robot gadget laptop keyboard headphones "
        "charger antenna satellite telescope compass map atlas novel poem sonnet chapter paragraph comic mural "
        "sculpture pottery quilt necklace bracelet ring mirror candle clock calendar deadline spreadsheet budget");
    return p;
}

const Pool& places()
{
    static const Pool p = split_pool(
        "pier rooftop corner_shop food_truck flea_market train_platform bus_stop laundromat backyard porch "
        "riverbank trailhead park_bench subway_car parking_lot farmers_market night_market hostel_lobby "
        "campus_lawn community_hall rec_center diner_booth ice_rink bowling_alley skate_park greenhouse "
        "orchard vineyard pumpkin_patch boathouse town_square plaza fountain bridge tunnel overpass lookout "
        "observatory planetarium aquarium botanical_garden record_shop thrift_store vintage_shop comic_shop");
    return p;
}

const Pool& times()
{
    static const Pool p = split_pool(
        "tonight yesterday lately earlier today at_dawn at_dusk after_midnight before_sunrise over_lunch "
        "on_sunday on_monday on_tuesday midweek last_weekend this_afternoon around_noon during_the_storm "
        "between_shifts after_class after_work before_breakfast");
    return p;
}

const Pool& prepositions()
{
    static const Pool p = split_pool(
        "at near by beside behind inside under around across past beyond along outside toward through within "
        "over beneath");
    return p;
}

const Pool& determiners()
{
    static const Pool p = split_pool("the a this that our my one some every each another");
    return p;
}

const Pool& linkers()
{
    static const Pool p = split_pool("and while because though so then until after before whereas since yet");
    return p;
}

const Pool& past_verbs()
{
    static const Pool p = split_pool(
        "glowed rattled hummed wobbled sparkled crackled drifted flickered buzzed creaked melted settled "
        "vanished appeared bloomed rumbled shimmered tumbled wandered lingered paused echoed whistled");
    return p;
}

const Pool& chat_openers()
{
    static const Pool p = split_pool(
        "ngl honestly lol lmao tbh okay wait yeah nah hmm omg bro dude sis fr lowkey highkey literally "
        "same wby luv");
    return p;
}

const Pool& comment_openers()
{
    static const Pool p = split_pool(
        "wow interesting nice solid neat huh lovely classic fair okay cool brilliant oddly genuinely "
        "curious honestly sweet");
    return p;
}

const Pool& off_topic_starters()
{
    static const Pool p = split_pool("unrelated random offtopic sidenote btw anyway also");
    return p;
}

const Pool& first_names()
{
    static const Pool p = split_pool(
        "maya liam noah emma ava lucas mia ethan zoe leo nora omar priya diego sara yuki ana ivan lena kofi "
        "amara chen hana jonas elif mateo nia ravi sofia tomas wei aisha bruno clara dario esme felix gemma "
        "hugo iris jun kira luca marco nadia oscar paula quinn rosa sami tara uma vera wade ximena yara zane");
    return p;
}

const Pool& last_names()
{
    static const Pool p = split_pool(
        "okafor silva tanaka novak haddad moreau kowalski lindqvist santos patel nguyen garcia mueller rossi "
        "kim ivanova mensah costa dubois schmidt yilmaz fischer romero ortiz bauer jensen larsen weber cruz "
        "reyes morales kaur singh chowdhury abara wong tan lee park sato ito suzuki hall price ward brooks");
    return p;
}

const Pool& alias_nouns()
{
    static const Pool p = split_pool(
        "wanderer drifter dreamer seeker rover nomad spark echo ember pilot scout keeper whisper comet "
        "lantern otter falcon sparrow maple harbor tide riddle pixel cipher glimmer");
    return p;
}

const Pool& persona_adjectives()
{
    static const Pool p = split_pool(
        "Curious Friendly Wandering Quiet Bold Thoughtful Playful Gentle Restless Witty Loyal Candid Dreamy "
        "Steady Sunny Wry Earnest Chatty");
    return p;
}

const Pool& persona_nouns()
{
    static const Pool p = split_pool(
        "Neighbor Regular Visitor Host Storyteller Listener Explorer Organizer Critic Helper Connector Observer "
        "Performer Tinkerer Collector Mentor Newcomer Insider");
    return p;
}

const Pool& group_nouns()
{
    static const Pool p = split_pool("Circle Collective Crew Club Society Guild Corner Table Assembly Gathering "
                                     "Hangout League Union Parlor Lounge Den");
    return p;
}

/// Keyword cues per interest, used to pick interests from attribute text.
const std::array<std::string_view, 25>& interest_cues()
{
    static const std::array<std::string_view, 25> cues = {
        "animal pet dog cat zoo wildlife",           // Animals
        "art design creative paint gallery craft",   // Art & Design
        "car auto drive road motor garage",          // Automobiles
        "diy craft build make handmade workshop",    // DIY & Crafting
        "learn study class school knowledge lecture", // Education
        "fashion style clothes outfit wear",         // Fashion
        "money finance invest market budget",        // Finance
        "fitness gym workout run exercise",          // Fitness
        "food eat cook picnic dinner meal cafe",     // Food
        "game gaming play arcade esports",           // Gaming
        "history culture heritage tradition museum", // History & Culture
        "lifestyle daily routine home life",         // Lifestyle
        "book read story literature poem library",   // Literature
        "movie film cinema screen theater",          // Movies
        "music concert song band festival dance",    // Music
        "nature outdoor park garden forest beach",   // Nature
        "growth goal self improve career",           // Personal Development
        "photo camera picture photography",          // Photography
        "mind psychology emotion feeling support",   // Psychology
        "faith religion spiritual church temple",    // Religion
        "social friend people community together",   // Social
        "sport team match stadium game fan",         // Sports
        "tech technology code digital gadget",       // Technology
        "travel trip journey explore tour",          // Travel
        "wellness health calm relax care",           // Wellness
    };
    return cues;
}

const Bindings& bindings_of(const GenerationRequest& req)
{
    static const Bindings empty;
    return req.bindings ? *req.bindings : empty;
}

std::string scalar(const Bindings& b, std::string_view key, std::string fallback = {})
{
    auto it = b.find(key);
    if (it == b.end()) {
        return fallback;
    }
    return render_binding(it->second);
}

std::vector<std::string> list(const Bindings& b, std::string_view key)
{
    auto it = b.find(key);
    if (it == b.end()) {
        return {};
    }
    if (const auto* v = std::get_if<std::vector<std::string>>(&it->second)) {
        return *v;
    }
    auto s = std::get<std::string>(it->second);
    return s.empty() ? std::vector<std::string>{} : std::vector<std::string>{s};
}

std::string capitalize(std::string s)
{
    if (!s.empty()) {
        s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    }
    return s;
}

/// Builds word sequences that avoid a banned vocabulary and repeat no token.
class Composer
{
public:
    Composer(Rng& rng, std::set<std::string> banned) : m_rng(rng), m_banned(std::move(banned)) {}

    void ban_text(std::string_view text)
    {
        for (auto& t : tokenize(text)) {
            m_banned.insert(std::move(t));
        }
    }

    bool usable(std::string_view phrase) const
    {
        auto tokens = tokenize(phrase);
        if (tokens.empty()) {
            return false;
        }
        for (const auto& t : tokens) {
            if (m_banned.contains(t) || m_used.contains(t)) {
                return false;
            }
        }
        return true;
    }

    std::string take(const Pool& pool, std::size_t max_len = 0)
    {
        const std::size_t start = m_rng.below(pool.size());
        for (std::size_t k = 0; k < pool.size(); ++k) {
            const auto& w = pool[(start + k) % pool.size()];
            if ((max_len == 0 || w.size() <= max_len) && usable(w)) {
                mark(w);
                return w;
            }
        }
        return invent(max_len == 0 ? 4 + m_rng.below(5) : std::max<std::size_t>(2, std::min<std::size_t>(max_len, 8)));
    }

    /// A pronounceable pseudo-word of exactly `len` letters.
    std::string invent(std::size_t len)
    {
        static constexpr std::string_view cons = "bcdfghjklmnprstvz";
        static constexpr std::string_view vows = "aeiou";
        for (int tries = 0; tries < 64; ++tries) {
            std::string w;
            for (std::size_t i = 0; i < len; ++i) {
                w.push_back(i % 2 == 0 ? cons[m_rng.below(cons.size())] : vows[m_rng.below(vows.size())]);
            }
            if (usable(w)) {
                mark(w);
                return w;
            }
        }
        std::string w = "q";
        while (w.size() < len) {
            w.push_back(static_cast<char>('a' + m_rng.below(26)));
        }
        mark(w);
        return w;
    }

    void mark(std::string_view phrase)
    {
        for (auto& t : tokenize(phrase)) {
            m_used.insert(std::move(t));
        }
    }

    Rng& rng() { return m_rng; }

private:
    Rng& m_rng;
    std::set<std::string> m_banned;
    std::set<std::string> m_used;
};

using Sentence = std::vector<std::string>;

std::size_t rendered_length(const std::vector<Sentence>& sentences, std::string_view separator)
{
    std::size_t n = 0;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        if (s > 0) {
            n += separator.size();
        }
        for (std::size_t w = 0; w < sentences[s].size(); ++w) {
            n += sentences[s][w].size() + (w > 0 ? 1 : 0);
        }
        n += 1; // period
    }
    return n;
}

std::string render(const std::vector<Sentence>& sentences, std::string_view separator)
{
    std::string out;
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        if (s > 0) {
            out += separator;
        }
        std::string line;
        for (std::size_t w = 0; w < sentences[s].size(); ++w) {
            if (w > 0) {
                line += ' ';
            }
            line += sentences[s][w];
        }
        out += capitalize(line) + ".";
    }
    return out;
}

struct Shape
{
    std::size_t min_chars = 1;
    std::size_t max_chars = 0;
    std::size_t max_sentences = 3;
    std::size_t max_words = 0;
    std::string separator = " ";
};

/// Grows and trims sentences until the rendered text fits the shape.
std::string fit(std::vector<Sentence> sentences, Composer& c, const Shape& shape,
                const std::vector<std::string>& forbidden)
{
    if (sentences.empty()) {
        sentences.push_back({c.take(nouns())});
    }
    if (shape.max_sentences > 0 && sentences.size() > shape.max_sentences) {
        sentences.resize(shape.max_sentences);
    }
    auto word_count = [&] {
        std::size_t n = 0;
        for (const auto& s : sentences) {
            n += s.size();
        }
        return n;
    };
    // trim
    while (shape.max_chars > 0 && rendered_length(sentences, shape.separator) > shape.max_chars) {
        auto& last = sentences.back();
        if (last.size() > 1) {
            last.pop_back();
        } else if (sentences.size() > 1) {
            sentences.pop_back();
        } else {
            last.back() = c.invent(std::max<std::size_t>(2, shape.max_chars - 1));
            break;
        }
    }
    while (shape.max_words > 0 && word_count() > shape.max_words) {
        if (sentences.back().size() > 1) {
            sentences.back().pop_back();
        } else {
            sentences.pop_back();
        }
    }
    // grow
    for (int guard = 0; guard < 64 && rendered_length(sentences, shape.separator) < shape.min_chars; ++guard) {
        const std::size_t len = rendered_length(sentences, shape.separator);
        if (shape.max_words > 0 && word_count() >= shape.max_words) {
            // lengthen the last word instead of adding one
            auto& w = sentences.back().back();
            w = c.invent(w.size() + (shape.min_chars - len));
            break;
        }
        std::size_t room = shape.max_chars > 0 ? shape.max_chars - len : 12;
        if (room < 3) {
            break;
        }
        room -= 1; // separating space
        const std::size_t need = shape.min_chars - len;
        const bool may_add_more = need > 7 && room >= 8;
        const std::size_t limit = room;
        std::string w;
        if (may_add_more) {
            w = c.take(c.rng().chance(0.5) ? adjectives() : nouns(), std::min<std::size_t>(limit, 10));
        } else {
            w = c.invent(std::clamp<std::size_t>(need > 0 ? need - 1 : 2, 2, limit));
        }
        sentences.back().push_back(w);
    }
    std::string out = render(sentences, shape.separator);
    for (const auto& f : forbidden) {
        if (starts_with_word(out, f)) {
            sentences.front().front() = c.take(openers(), sentences.front().front().size() + 2);
            out = render(sentences, shape.separator);
        }
    }
    return out;
}

Sentence post_sentence(Composer& c, int pattern, const std::string& topic)
{
    auto det = [&] { return c.take(determiners()); };
    switch (pattern % 4) {
    case 0:
        return {c.take(openers()), det(), c.take(adjectives()), topic.empty() ? c.take(nouns()) : topic,
                c.take(prepositions()), det(), c.take(places()), c.take(times())};
    case 1:
        return {det(), c.take(adjectives()), c.take(nouns()), c.take(past_verbs()), c.take(linkers()), det(),
                c.take(nouns()), c.take(past_verbs()), c.take(prepositions()), c.take(places())};
    case 2:
        return {c.take(openers()), c.take(adjectives()), c.take(nouns()), c.take(linkers()), c.take(adjectives()),
                c.take(nouns()), c.take(times())};
    default:
        return {c.take(times()), det(), c.take(nouns()), c.take(prepositions()), det(), c.take(places()),
                c.take(past_verbs()), c.take(linkers()), c.take(adjectives())};
    }
}

std::set<std::string> history_tokens(const Bindings& b)
{
    std::set<std::string> out;
    for (const auto& h : list(b, "ctx.history")) {
        for (auto& t : tokenize(h)) {
            out.insert(std::move(t));
        }
    }
    return out;
}

std::string topic_word(Composer& c, const Bindings& b)
{
    auto interests = list(b, "user_interests");
    std::vector<std::string> candidates;
    for (const auto& i : interests) {
        for (auto& t : tokenize(i)) {
            if (t.size() > 3 && c.usable(t)) {
                candidates.push_back(t);
            }
        }
    }
    if (candidates.empty()) {
        return {};
    }
    auto w = candidates[c.rng().below(candidates.size())];
    c.mark(w);
    return w;
}

Shape shape_from(const GenerationConstraints* gc, Shape base)
{
    if (!gc) {
        return base;
    }
    if (gc->min_chars > 0) {
        base.min_chars = gc->min_chars;
    }
    if (gc->max_chars > 0) {
        base.max_chars = gc->max_chars;
    }
    if (gc->max_sentences > 0) {
        base.max_sentences = gc->max_sentences;
    }
    if (gc->max_words > 0) {
        base.max_words = gc->max_words;
    }
    return base;
}

std::string make_post(const GenerationRequest& req, Rng& rng, bool ephemeral)
{
    const auto& b = bindings_of(req);
    Composer c(rng, history_tokens(b));
    for (const auto& f : forbidden_post_openers()) {
        c.ban_text(f);
    }
    Shape shape = shape_from(req.constraints, ephemeral ? Shape{30, 40, 2, 0, " "} : Shape{120, 150, 3, 0, "\n"});
    const std::string topic = topic_word(c, b);
    std::vector<Sentence> sentences;
    const std::size_t goal = rng.between(static_cast<int>(shape.min_chars), static_cast<int>(shape.max_chars));
    int pattern = static_cast<int>(rng.below(4));
    while (sentences.size() < shape.max_sentences && rendered_length(sentences, shape.separator) < goal) {
        sentences.push_back(post_sentence(c, pattern++, sentences.empty() ? topic : std::string{}));
        if (ephemeral) {
            sentences.back().resize(std::min<std::size_t>(sentences.back().size(), 4));
        }
    }
    if (!ephemeral && !topic.empty() && rng.chance(0.3)) {
        sentences.back().push_back("#" + topic);
    }
    return fit(std::move(sentences), c, shape, forbidden_post_openers());
}

std::string make_comment(const GenerationRequest& req, Rng& rng)
{
    const auto& b = bindings_of(req);
    Composer c(rng, history_tokens(b));
    Shape shape = shape_from(req.constraints, Shape{10, 100, 2, 0, " "});
    shape.max_chars = std::min<std::size_t>(shape.max_chars == 0 ? 100 : shape.max_chars, 100);
    shape.min_chars = std::max<std::size_t>(shape.min_chars, 10);
    int closeness = 1;
    try {
        closeness = std::stoi(scalar(b, "closeness", "1"));
    } catch (const std::exception&) {
        closeness = 1;
    }
    std::string anchor;
    for (auto& t : tokenize(scalar(b, "sel_post.content"))) {
        if (t.size() > 4 && c.usable(t)) {
            anchor = t;
            break;
        }
    }
    if (!anchor.empty()) {
        c.mark(anchor);
    }
    std::vector<Sentence> sentences;
    Sentence first{c.take(comment_openers())};
    if (closeness >= 7) {
        first.push_back(c.take(split_pool("love luv haha friend buddy mate")));
    }
    first.push_back(c.take(adjectives()));
    first.push_back(anchor.empty() ? c.take(nouns()) : anchor);
    sentences.push_back(std::move(first));
    const bool one_liner = rng.chance(0.6);
    if (!one_liner) {
        sentences.push_back({c.take(linkers()), c.take(determiners()), c.take(nouns()), c.take(past_verbs()),
                             c.take(times())});
    }
    return fit(std::move(sentences), c, shape, {});
}

std::string make_chat(const GenerationRequest& req, Rng& rng)
{
    const auto& b = bindings_of(req);
    Composer c(rng, history_tokens(b));
    Shape shape = shape_from(req.constraints, Shape{2, 0, 2, 12, " "});
    if (shape.max_words == 0 || shape.max_words > 12) {
        shape.max_words = 12;
    }
    const bool off_topic = scalar(b, "ctx.off_topic") == "1";
    const auto history = list(b, "ctx.history");
    const bool question = !history.empty() && utf8::trim(history.back()).ends_with("?");
    std::vector<Sentence> sentences;
    Sentence first;
    if (off_topic) {
        first = {c.take(off_topic_starters()), c.take(determiners()), c.take(nouns()), c.take(past_verbs()),
                 c.take(times())};
    } else if (question) {
        first = {c.take(split_pool("yeah nah honestly kinda maybe definitely probably")), c.take(openers()),
                 c.take(determiners()), c.take(nouns()), c.take(times())};
    } else {
        first = {c.take(chat_openers()), c.take(determiners()), c.take(adjectives()), c.take(nouns()),
                 c.take(past_verbs())};
    }
    sentences.push_back(std::move(first));
    if (rng.chance(0.4)) {
        sentences.push_back({c.take(openers()), c.take(determiners()), c.take(nouns())});
    }
    std::string text = fit(std::move(sentences), c, shape, {});
    if (!off_topic && rng.chance(0.25) && !text.empty()) {
        text.back() = '?';
    }
    return text;
}

struct Openness
{
    int open = 0;
    int intimate = 0;
    bool large = false;
    bool small = false;
};

int count_cues(const std::string& text, std::initializer_list<std::string_view> cues)
{
    int n = 0;
    for (auto cue : cues) {
        if (text.find(cue) != std::string::npos) {
            ++n;
        }
    }
    return n;
}

Openness classify(const std::string& keyword)
{
    const std::string t = utf8::to_lower_ascii(keyword);
    Openness o;
    o.open = count_cues(t, {"crowd", "concert", "festival", "stadium", "fair", "market", "stage", "playground",
                            "plaza", "square", "street", "public", "party", "arena", "station", "mall", "park",
                            "beach", "supermarket", "shop", "club", "open"});
    o.intimate = count_cues(t, {"picnic", "dinner", "living room", "kitchen", "bedroom", "friends", "family", "cafe",
                                "book club", "sleepover", "cozy", "home", "porch", "couch", "fireplace", "small",
                                "quiet", "private", "tea", "close"});
    o.large = count_cues(t, {"crowd", "concert", "festival", "stadium", "arena", "convention", "job fair"}) > 0;
    o.small = count_cues(t, {"small", "few", "picnic", "close friends", "dinner", "sleepover", "couple"}) > 0;
    return o;
}

std::string_view pick_sv(Rng& rng, std::initializer_list<std::string_view> options)
{
    return *(options.begin() + rng.below(options.size()));
}

std::size_t best_interest(const std::string& text, Rng& rng)
{
    const std::string lower = utf8::to_lower_ascii(text);
    int best = 0;
    std::vector<std::size_t> tied;
    for (std::size_t i = 0; i < kInterests.size(); ++i) {
        int score = 0;
        std::istringstream in{std::string(interest_cues()[i])};
        for (std::string cue; in >> cue;) {
            score += lower.find(cue) != std::string::npos ? 1 : 0;
        }
        if (score > best) {
            best = score;
            tied.assign(1, i);
        } else if (score == best && score > 0) {
            tied.push_back(i);
        }
    }
    if (tied.empty()) {
        return rng.below(kInterests.size());
    }
    return tied[rng.below(tied.size())];
}

std::string make_attributes(const GenerationRequest& req, Rng& rng)
{
    const std::string keyword = utf8::trim(scalar(bindings_of(req), "metaphorKeyword", "a shared space"));
    const Openness o = classify(keyword);
    const bool open = o.open > o.intimate || (o.open == o.intimate && rng.chance(0.5));
    const std::string interest(kInterests[best_interest(keyword, rng)]);

    MetaphorAttributes a;
    a.atmosphere = std::string(open ? pick_sv(rng, {"vibrant, energetic and lively", "bustling, loud and spontaneous",
                                                    "playful, open and buzzing"})
                                    : pick_sv(rng, {"cozy, calm and intimate", "warm, quiet and relaxed",
                                                    "safe, familiar and gentle"}));
    a.gathering_type = "around the shared experience of " + keyword;
    if (o.large) {
        a.connecting_environment = "through chance encounters in a large open crowd";
    } else if (o.small) {
        a.connecting_environment = "within a small group of close friends";
    } else {
        a.connecting_environment = open ? "through casual encounters with strangers in a public setting"
                                        : "through recurring encounters among familiar faces";
    }
    a.temporal_engagement = std::string(open ? pick_sv(rng, {"drop in for brief, spontaneous moments",
                                                             "pass through for short, fleeting visits"})
                                             : pick_sv(rng, {"stay for long, relaxed stretches of time",
                                                             "return regularly for lasting, ongoing routines"}));
    a.communication_flow = std::string(open ? pick_sv(rng, {"quick, many-to-many public exchanges",
                                                            "lively group banter and broadcast updates"})
                                            : pick_sv(rng, {"personal, one-on-one and small group conversations",
                                                            "deep, honest dialogue among trusted people"}));
    a.actor_type = std::string(open ? pick_sv(rng, {"casual personas and fan handles", "playful aliases and roles"})
                                    : pick_sv(rng, {"their real names among trusted friends",
                                                    "known identities within a tight-knit circle"}));
    a.content_orientation = open ? "share " + utf8::to_lower_ascii(interest) + " highlights and discover what is trending"
                                 : "share personal " + utf8::to_lower_ascii(interest) + " stories and support each other";
    a.participation_control = std::string(open ? pick_sv(rng, {"come and go freely, with tools to block or mute",
                                                               "join openly and mute the noise when needed"})
                                               : pick_sv(rng, {"join only by invitation and decide who sees what",
                                                               "enter by invite and keep boundaries safe"}));
    return "```json\n" + to_json(a).dump(2) + "\n```";
}

std::string make_features(const GenerationRequest& req, std::uint64_t seed)
{
    const auto& b = bindings_of(req);
    MetaphorAttributes attrs;
    try {
        attrs = parse_attributes(scalar(b, "descr.llm_descr"));
    } catch (const AttributeError&) {
        for (auto* f : attribute_fields(attrs)) {
            *f = "open";
        }
    }
    const PlatformConfig config = stub_attributes_to_config(attrs, seed);
    std::string rationale;
    rationale += "The " + attrs.atmosphere + " atmosphere and people gathering " + attrs.gathering_type +
                 " shaped the network structure.\n";
    rationale += "Connections form " + attrs.connecting_environment + ", which sets the user count at " +
                 std::to_string(config.user_count) + ".\n";
    rationale += "Because people " + attrs.temporal_engagement + " and interact through " + attrs.communication_flow +
                 ", the interaction mechanisms follow that rhythm.\n";
    rationale += "Participants " + attrs.participation_control + ", reflected in the privacy and networking controls.";
    return format_config(config, rationale);
}

std::string make_join(const GenerationRequest& req)
{
    const auto& b = bindings_of(req);
    std::string choice = scalar(b, "ctx.choice");
    if (!choice.empty()) {
        return choice;
    }
    const std::string listing = scalar(b, "communities");
    auto pos = listing.find_first_of("0123456789");
    if (pos == std::string::npos) {
        return "0";
    }
    auto end = listing.find_first_not_of("0123456789", pos);
    return listing.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

struct Range
{
    double lo;
    double hi;
};

std::array<Range, 7> role_trait_ranges(Role role)
{
    switch (role) {
    case Role::Influencer: return {{{.7, 1}, {.6, .9}, {.5, .8}, {.5, .8}, {.3, .7}, {.4, .8}, {.5, .9}}};
    case Role::Spreader: return {{{.6, .9}, {.5, .8}, {.5, .8}, {.5, .7}, {.2, .5}, {.5, .9}, {.4, .7}}};
    case Role::SupportSeeker: return {{{.4, .7}, {.6, .9}, {.5, .8}, {.7, 1}, {.1, .4}, {.3, .6}, {.6, .9}}};
    case Role::Entertainer: return {{{.6, .9}, {.6, .9}, {.6, .9}, {.5, .8}, {.2, .5}, {.3, .7}, {.4, .7}}};
    case Role::Moderator: return {{{.3, .6}, {.7, 1}, {.5, .7}, {.5, .8}, {.5, .9}, {.6, 1}, {.6, .9}}};
    case Role::Activist: return {{{.6, .9}, {.6, .9}, {.5, .8}, {.5, .8}, {.3, .6}, {.5, .9}, {.4, .7}}};
    case Role::Networker: return {{{.4, .7}, {.5, .8}, {.5, .8}, {.7, 1}, {.6, .9}, {.6, .9}, {.5, .8}}};
    case Role::Lurker: return {{{0, .2}, {.5, .6}, {.5, .7}, {.5, .6}, {0, .2}, {0, .2}, {.6, 1}}};
    case Role::Bully: return {{{.3, .6}, {.7, 1}, {.5, .9}, {.5, .7}, {.1, .4}, {.1, .4}, {.2, .5}}};
    }
    return {};
}

std::string slug(std::string_view text)
{
    std::string out;
    for (unsigned char ch : text) {
        if (std::isalnum(ch)) {
            out.push_back(static_cast<char>(std::tolower(ch)));
        }
    }
    return out;
}

std::string theme_word(const std::string& keyword, Rng& rng)
{
    std::vector<std::string> words;
    for (auto& t : tokenize(keyword)) {
        if (t.size() >= 4 && t != "with" && t != "that" && t != "from" && t != "their" && t != "where") {
            words.push_back(slug(t));
        }
    }
    if (words.empty()) {
        return "space";
    }
    return words[rng.below(words.size())];
}

std::string hex(std::uint64_t v, int digits)
{
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < digits; ++i) {
        out.push_back(kHex[(v >> (4 * i)) & 0xF]);
    }
    return out;
}

std::string make_agent(const GenerationRequest& req, Rng& rng)
{
    const auto& b = bindings_of(req);
    const Role role = parse_role(scalar(b, "goalRole.role")).value_or(Role::Lurker);
    const std::string identity = scalar(b, "ctx.identity", "Pseudonymous");
    const std::string keyword = scalar(b, "descriptions.keyword", "space");
    const auto existing = list(b, "ctx.existing_names");
    const std::set<std::string> taken(existing.begin(), existing.end());

    std::string user_name;
    for (int tries = 0; tries < 32 && (user_name.empty() || taken.contains(user_name)); ++tries) {
        if (identity == "RealName") {
            user_name = rng.pick<std::string>(first_names()) + "." + rng.pick<std::string>(last_names());
            if (tries > 0) {
                user_name += std::to_string(rng.between(2, 99));
            }
        } else if (identity == "Anonymous") {
            user_name = "anon_" + hex(rng.next(), 6);
        } else {
            user_name = theme_word(keyword, rng) + "_" + rng.pick<std::string>(alias_nouns()) +
                        std::to_string(rng.between(1, 99));
        }
    }
    const std::string theme = theme_word(keyword, rng);

    Composer bio_words(rng, {});
    const std::string orientation = scalar(b, "descr.llm_descr.ContentOrientation");
    std::vector<Sentence> bio = {
        {bio_words.take(split_pool("into obsessed_with chasing collecting sharing exploring documenting")),
         bio_words.take(adjectives()), bio_words.take(nouns()), "and", bio_words.take(adjectives()),
         bio_words.take(nouns())},
        {bio_words.take(split_pool("usually often mostly sometimes always")), "found",
         bio_words.take(prepositions()), "the", bio_words.take(places()), bio_words.take(times())},
        {bio_words.take(split_pool("ask talk chat message")), "me", "about", bio_words.take(nouns())},
    };
    const std::string user_bio = fit(std::move(bio), bio_words, Shape{110, 160, 3, 0, " "}, {});

    nlohmann::ordered_json j;
    j["id_name"] = "ID_" + slug(user_name).substr(0, 12) + "_" + hex(rng.next(), 6);
    j["user_name"] = user_name;
    j["email"] = slug(user_name) + "@" + theme + ".social";
    std::string password;
    static constexpr std::string_view kPw = "ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz23456789!#%&*";
    for (int i = 0; i < 16; ++i) {
        password.push_back(kPw[rng.below(kPw.size())]);
    }
    j["password"] = password;
    j["user_bio"] = user_bio;
    j["profile_picture"] = "https://i.pravatar.cc/120?u=" + hex(rng.next(), 10);
    static constexpr std::array<std::string_view, 7> kTraitKeys = {
        "posting_trait", "commenting_trait", "reacting_trait", "messaging_trait",
        "updating_trait", "comm_trait", "notification_trait"};
    const auto ranges = role_trait_ranges(role);
    for (std::size_t i = 0; i < kTraitKeys.size(); ++i) {
        const double v = std::round(rng.between(ranges[i].lo, ranges[i].hi) * 100.0) / 100.0;
        j[std::string(kTraitKeys[i])] = v;
    }
    std::vector<std::size_t> chosen{best_interest(orientation + " " + keyword, rng)};
    const std::size_t want = 3 + rng.below(3);
    while (chosen.size() < want) {
        const std::size_t k = rng.below(kInterests.size());
        if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) {
            chosen.push_back(k);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    nlohmann::json interests = nlohmann::json::array();
    for (auto k : chosen) {
        interests.push_back(std::string(kInterests[k]));
    }
    j["interests"] = interests;
    j["persona_name"] = rng.pick<std::string>(persona_adjectives()) + rng.pick<std::string>(persona_nouns());
    j["social_group_name"] = "The " + capitalize(theme) + " " + rng.pick<std::string>(group_nouns());
    return j.dump(2);
}

} // namespace

std::string StubProvider::complete(const GenerationRequest& req)
{
    Rng rng(mix_seed(req.seed, stable_hash(req.system), stable_hash(req.user)));
    switch (req.prompt) {
    case PromptId::MetaphorConversion: return make_attributes(req, rng);
    case PromptId::FeatureMapping: return make_features(req, req.seed);
    case PromptId::ChatDyadic:
    case PromptId::ChatGroup: return make_chat(req, rng);
    case PromptId::PostPersonal:
    case PromptId::PostChannel: return make_post(req, rng, false);
    case PromptId::PostPersonalEphemeral:
    case PromptId::PostChannelEphemeral: return make_post(req, rng, true);
    case PromptId::JoinChannel: return make_join(req);
    case PromptId::AgentSystem:
    case PromptId::AgentUser: return make_agent(req, rng);
    case PromptId::Comment: return make_comment(req, rng);
    }
    throw ProviderError("ProviderRejected", "stub", "unknown prompt");
}

ChannelIdentity generate_channel_identity(std::string_view interest, const MetaphorAttributes& attrs,
                                          std::uint64_t seed)
{
    Rng rng(mix_seed(seed, stable_hash(interest)));
    const std::string topic = slug(interest);
    std::string name;
    switch (rng.below(4)) {
    case 0: name = capitalize(rng.pick<std::string>(adjectives())) + " " + capitalize(topic) + " " +
                   rng.pick<std::string>(group_nouns());
        break;
    case 1: name = capitalize(topic) + " " + rng.pick<std::string>(group_nouns()) + " of the " +
                   capitalize(rng.pick<std::string>(nouns()));
        break;
    case 2: name = capitalize(rng.pick<std::string>(nouns())) + "side " + capitalize(topic);
        break;
    default: name = capitalize(rng.pick<std::string>(places())) + " " + capitalize(topic) + " Talk";
        break;
    }
    std::string bio = std::string(interest) + " for people who " + utf8::to_lower_ascii(attrs.content_orientation);
    return {name, bio};
}

} // namespace metaspace
