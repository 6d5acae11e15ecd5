#include <gtest/gtest.h>

#include <cmath>

#include "metaspace/errors.hpp"
#include "metaspace/rng.hpp"
#include "metaspace/text_metrics.hpp"
#include "oracles.hpp"

using namespace metaspace;
using metaspace::fixtures::jw_reference;
using metaspace::fixtures::widen;

TEST(Tokenize, FoldsCaseAndSplitsOnPunctuation)
{
    EXPECT_EQ(tokenize("Hello, WORLD! it's"), (std::vector<std::string>{"hello", "world", "it", "s"}));
    EXPECT_TRUE(tokenize("  ... ").empty());
}

TEST(LexicalOverlap, HandExamples)
{
    const std::vector<std::string> priors{"c d e f"};
    EXPECT_DOUBLE_EQ(lexical_overlap("a b c d", priors), 0.5);
    const std::vector<std::string> same{"the quiet lantern"};
    EXPECT_DOUBLE_EQ(lexical_overlap("the quiet lantern", same), 1.0);
    const std::vector<std::string> disjoint{"x y z"};
    EXPECT_DOUBLE_EQ(lexical_overlap("a b c", disjoint), 0.0);
    EXPECT_DOUBLE_EQ(lexical_overlap("a b", std::vector<std::string>{}), 0.0);
}

TEST(LexicalOverlap, CountsUnionOfPriors)
{
    const std::vector<std::string> priors{"a", "b"};
    EXPECT_DOUBLE_EQ(lexical_overlap("a b c d", priors), 0.5);
}

TEST(LexicalOverlap, BlankCandidateIsAnError)
{
    const std::vector<std::string> priors{"x"};
    EXPECT_THROW(lexical_overlap("!!!", priors), MetricError);
}

TEST(Cosine, HandExamples)
{
    EXPECT_DOUBLE_EQ(cosine_similarity("a a b", "a b b"), 0.8);
    EXPECT_DOUBLE_EQ(cosine_similarity("river stone", "river stone"), 1.0);
    EXPECT_DOUBLE_EQ(cosine_similarity("river stone", "ember tide"), 0.0);
    EXPECT_THROW(cosine_similarity("", "a"), MetricError);
}

TEST(JaroWinkler, TextbookValues)
{
    EXPECT_NEAR(jaro_winkler("MARTHA", "MARHTA"), 0.9611, 1e-4);
    EXPECT_NEAR(jaro_winkler("DWAYNE", "DUANE"), 0.84, 1e-2);
    EXPECT_NEAR(jaro_winkler("DIXON", "DICKSONX"), 0.8133, 1e-4);
    EXPECT_DOUBLE_EQ(jaro_winkler("same", "same"), 1.0);
    EXPECT_DOUBLE_EQ(jaro_winkler("", "abc"), 0.0);
    EXPECT_DOUBLE_EQ(jaro_winkler("abc", ""), 0.0);
}

TEST(JaroWinkler, MatchesReferenceOnRandomPairs)
{
    Rng rng(2024);
    for (int i = 0; i < 2000; ++i) {
        std::string a, b;
        const int la = rng.between(0, 14);
        const int lb = rng.between(0, 14);
        for (int k = 0; k < la; ++k) {
            a += static_cast<char>('a' + rng.below(5));
        }
        for (int k = 0; k < lb; ++k) {
            b += static_cast<char>('a' + rng.below(5));
        }
        ASSERT_NEAR(jaro_winkler(a, b), jw_reference(widen(a), widen(b)), 1e-12) << a << " / " << b;
        ASSERT_NEAR(jaro_winkler(a, b), jaro_winkler(b, a), 1e-12);
    }
}

TEST(JaroWinkler, OperatesOnCodePoints)
{
    EXPECT_DOUBLE_EQ(jaro_winkler("café", "café"), 1.0);
    EXPECT_NEAR(jaro_winkler("naïve", "naive"), jaro_winkler("naXve", "naive"), 1e-12);
}

TEST(PostConstraints, Examples)
{
    EXPECT_TRUE(passes_post_constraints("anything at all", std::vector<std::string>{}));
    const std::vector<std::string> history{"the lanterns glow over the river tonight"};
    EXPECT_FALSE(passes_post_constraints("the lanterns glow over the river tonight", history));
}

TEST(PostConstraints, NearBoundaryBagsFoundBySearch)
{
    // Search small vocabularies for a candidate/prior pair whose overlap and
    // cosine are both just under 0.2, and one pair at or over it.
    const std::vector<std::string> vocab{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};
    bool found_pass = false;
    bool found_fail = false;
    for (int cand_len = 4; cand_len <= 8 && !(found_pass && found_fail); ++cand_len) {
        for (int prior_len = 3; prior_len <= 8; ++prior_len) {
            std::string cand, prior = "a";
            for (int k = 0; k < cand_len; ++k) {
                cand += vocab[static_cast<std::size_t>(k)] + " ";
            }
            for (int k = 0; k < prior_len - 1; ++k) {
                prior += " " + vocab[static_cast<std::size_t>(cand_len + k) % vocab.size()] + "x";
            }
            const std::vector<std::string> priors{prior};
            const double ov = lexical_overlap(cand, priors);
            const double cs = cosine_similarity(cand, prior);
            if (ov >= 0.15 && ov < 0.20 && cs >= 0.15 && cs < 0.20) {
                EXPECT_TRUE(passes_post_constraints(cand, priors)) << cand << " | " << prior;
                found_pass = true;
            }
            if (ov >= 0.20 || cs >= 0.20) {
                EXPECT_FALSE(passes_post_constraints(cand, priors));
                found_fail = true;
            }
        }
    }
    EXPECT_TRUE(found_pass);
    EXPECT_TRUE(found_fail);
}

TEST(PostConstraints, OnlyLastThreeCount)
{
    const std::vector<std::string> history{"lantern river ember", "alpha", "beta", "gamma"};
    EXPECT_TRUE(passes_post_constraints("lantern river ember", history));
    EXPECT_EQ(last_three(history).size(), 3u);
}

TEST(CommentConstraints, Boundary)
{
    EXPECT_TRUE(passes_comment_constraints("x", std::vector<std::string>{}));
    const std::vector<std::string> prior{"a b"};
    // 2 of 7 distinct tokens shared: 0.2857
    EXPECT_TRUE(passes_comment_constraints("a b c d e f g", prior));
    const std::vector<std::string> prior3{"a b c"};
    // 3 of 10: exactly 0.30 is rejected
    EXPECT_FALSE(passes_comment_constraints("a b c d e f g h i j", prior3));
    EXPECT_FALSE(passes_comment_constraints("a b", prior));
}

TEST(ChannelNames, Distinctness)
{
    EXPECT_TRUE(channel_name_is_distinct("Lantern Row", std::vector<std::string>{}));
    const std::vector<std::string> existing{"Lantern Row"};
    EXPECT_FALSE(channel_name_is_distinct("Lantern Row", existing));
}

TEST(ChannelNames, BoundaryPairsFromOracleSearch)
{
    Rng rng(77);
    int below = 0;
    int above = 0;
    for (int i = 0; i < 200000 && (below < 20 || above < 20); ++i) {
        std::string a, b;
        const int la = rng.between(3, 9);
        const int lb = rng.between(3, 9);
        for (int k = 0; k < la; ++k) {
            a += static_cast<char>('a' + rng.below(6));
        }
        for (int k = 0; k < lb; ++k) {
            b += static_cast<char>('a' + rng.below(6));
        }
        const double ref = jw_reference(widen(a), widen(b));
        const std::vector<std::string> existing{b};
        if (ref >= 0.68 && ref < 0.6999) {
            EXPECT_TRUE(channel_name_is_distinct(a, existing)) << a << " " << b << " " << ref;
            ++below;
        } else if (ref >= 0.70 && ref < 0.72) {
            EXPECT_FALSE(channel_name_is_distinct(a, existing)) << a << " " << b << " " << ref;
            ++above;
        }
    }
    EXPECT_GE(below, 20);
    EXPECT_GE(above, 20);
}
