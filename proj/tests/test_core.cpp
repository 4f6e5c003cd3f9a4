#include <gtest/gtest.h>

#include "corpus.hpp"
#include "syllogistic/core.hpp"

using namespace syl;
using syl::testing::kb_of;
using syl::testing::sentence;

TEST(Contradictory, SwapsQualities) {
    auto kb = kb_of("terms: a b c d");
    EXPECT_EQ(contradictory(sentence(kb, "A a b")), sentence(kb, "O a b"));
    EXPECT_EQ(contradictory(sentence(kb, "E a b")), sentence(kb, "I a b"));
    EXPECT_EQ(contradictory(contradictory(sentence(kb, "I c d"))), sentence(kb, "I c d"));
}

TEST(Contradictory, InvolutionAndClassification) {
    for (const auto& s : all_sentences(3)) {
        EXPECT_EQ(contradictory(contradictory(s)), s);
        EXPECT_NE(is_universal(s), is_particular(s));
        EXPECT_NE(is_affirmative(s), is_negative(s));
        const auto t = contradictory(s);
        EXPECT_EQ(t.subject, s.subject);
        EXPECT_EQ(t.predicate, s.predicate);
        EXPECT_NE(is_universal(s), is_universal(t));
        EXPECT_NE(is_affirmative(s), is_affirmative(t));
    }
}

TEST(EssentialTerms, Examples) {
    auto kb = kb_of("A a b\nE c c");
    EXPECT_EQ(essential_terms(kb), (std::vector<TermId>{0, 1}));
    EXPECT_TRUE(essential_terms(KnowledgeBase{}).empty());
    auto kb2 = kb_of("A a b\nO b c");
    EXPECT_EQ(essential_terms(kb2), (std::vector<TermId>{0, 1, 2}));
}

TEST(EssentialTerms, ReflexiveSentencesAddNothing) {
    for (const auto& kb : syl::testing::random_corpus(300, 11, 4, 6))
        for (TermId c = 0; c < kb.universe_size(); ++c)
            for (auto q : kQualities) EXPECT_EQ(essential_terms(kb.with({q, c, c})), essential_terms(kb));
}

TEST(PlainlyContradictory, Examples) {
    auto kb = kb_of("E c c");
    EXPECT_EQ(is_plainly_contradictory(kb), sentence(kb, "E c c"));
    auto kb2 = kb_of("O c c\nA a b");
    EXPECT_EQ(is_plainly_contradictory(kb2), sentence(kb2, "O c c"));
    EXPECT_FALSE(is_plainly_contradictory(kb_of("E a b")));
}

TEST(ParseKb, Transcription) {
    auto kb = kb_of("A a b\nE b c");
    ASSERT_EQ(kb.size(), 2u);
    EXPECT_EQ(render(kb.sentences()[0], kb), "A a b");
    EXPECT_EQ(render(kb.sentences()[1], kb), "E b c");
    EXPECT_EQ(kb.name(0), "a");
    EXPECT_EQ(kb.name(2), "c");
}

TEST(ParseKb, CommentsAndBlankLines) {
    auto kb = kb_of("# note\n\nI x y  # trailing\n");
    ASSERT_EQ(kb.size(), 1u);
    EXPECT_EQ(render(kb.sentences()[0], kb), "I x y");
}

TEST(ParseKb, TermsHeader) {
    auto kb = kb_of("terms: p q r\nA q p");
    EXPECT_EQ(kb.universe_size(), 3u);
    EXPECT_EQ(kb.sentences()[0], (Sentence{Quality::A, 1, 0}));
}

TEST(ParseKb, Errors) {
    EXPECT_THROW(kb_of("Q a b"), ParseError);
    EXPECT_THROW(kb_of("A a"), ParseError);
    EXPECT_THROW(kb_of("A a b c"), ParseError);
    EXPECT_THROW(kb_of("A 1a b"), ParseError);
    try {
        kb_of("A a b\n\nX a b");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ParseKb, PrimedIdentifiers) {
    auto kb = kb_of("A c c'\nA c' c");
    EXPECT_EQ(kb.universe_size(), 2u);
    EXPECT_EQ(kb.name(1), "c'");
}

TEST(ParseKb, RoundTrip) {
    for (const auto& kb : syl::testing::random_corpus(500, 3)) EXPECT_EQ(parse_kb(render_kb(kb)), kb);
}

TEST(SentenceCode, Bijection) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = all_sentences(n);
        ASSERT_EQ(all.size(), 4 * n * n);
        for (std::size_t i = 0; i < all.size(); ++i) {
            EXPECT_EQ(sentence_code(all[i], n), i);
            EXPECT_EQ(sentence_from_code(i, n), all[i]);
        }
    }
}

TEST(CanonicalOrder, QualityThenSymbols) {
    auto kb = kb_of("I b a\nA z y\nA b c\nE a a");
    auto order = canonical_order(kb.sentences(), kb.symbols());
    std::vector<std::string> rendered;
    for (const auto& s : order) rendered.push_back(render(s, kb));
    EXPECT_EQ(rendered, (std::vector<std::string>{"A b c", "A z y", "E a a", "I b a"}));
}

TEST(KnowledgeBase, Deduplicates) {
    auto kb = kb_of("A a b\nA a b");
    EXPECT_EQ(kb.size(), 1u);
    EXPECT_THROW(kb.add(Sentence{Quality::A, 0, 7}), std::out_of_range);
}
