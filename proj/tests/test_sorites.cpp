#include <gtest/gtest.h>

#include "corpus.hpp"
#include "syllogistic/sorites.hpp"

using namespace syl;
using syl::testing::kb_of;
using syl::testing::sentence;

namespace {

std::vector<Sentence> seq_of(const KnowledgeBase& kb, std::initializer_list<const char*> texts) {
    std::vector<Sentence> out;
    for (auto t : texts) out.push_back(sentence(kb, t));
    return out;
}

} // namespace

TEST(IsSorites, Examples) {
    auto kb = kb_of("A a b\nA b c\nO a b\nI b a");
    auto gamma = kb_of("terms: a b c\nA a b\nA b c");
    EXPECT_TRUE(is_sorites(seq_of(kb, {"O a b"}), kb, rules(systems::d)));
    EXPECT_TRUE(is_sorites(seq_of(gamma, {"A a b", "A b c", "A a c"}), gamma, rules(systems::d)));
    EXPECT_FALSE(is_sorites(seq_of(gamma, {"A a b", "A b c", "A a c"}), kb_of("terms: a b c\nA a b"),
                            rules(systems::d)));
    auto g2 = kb_of("A a b\nI b a\nA b c");
    EXPECT_FALSE(is_sorites(seq_of(g2, {"A a b", "I b a", "A b c", "A a c"}), g2, rules(systems::dPrime)));
    EXPECT_FALSE(is_sorites(std::vector<Sentence>{}, gamma, rules(systems::d)));
}

TEST(IsSorites, RepeatedLinesRejected) {
    auto kb = kb_of("A a b\nA b c");
    EXPECT_FALSE(is_sorites(seq_of(kb, {"A a b", "A a b"}), kb, rules(systems::d)));
}

TEST(Search, NeedsSubalternationOfE) {
    auto kb = kb_of("terms: a b c\nA c a\nE b c");
    const auto target = sentence(kb, "O a b");
    ASSERT_TRUE(derives(kb, target, systems::dPrime));
    EXPECT_FALSE(find_sorites_exhaustive(kb, target, rules(systems::dPrime)));
    auto found = find_sorites_exhaustive(kb, target, rules(systems::dDoublePrime));
    ASSERT_TRUE(found);
    EXPECT_TRUE(check_derivation(*found, kb, systems::dDoublePrime));
    EXPECT_EQ(found->back().sentence, target);

    auto routed = synthesize_sorites_routed(kb, target, systems::dPrime);
    EXPECT_EQ(routed.system, systems::dDoublePrime);
    ASSERT_TRUE(routed.sorites);
    EXPECT_TRUE(is_sorites(*routed.sorites, kb, systems::dDoublePrime));
}

TEST(Search, NeedsFerison) {
    auto kb = kb_of("terms: a b c x\nA c x\nE b x\nI c a");
    const auto target = sentence(kb, "O a b");
    auto s = synthesize_sorites(kb, target, systems::dDoublePrime);
    ASSERT_TRUE(s);
    EXPECT_TRUE(is_sorites(*s, kb, systems::dDoublePrime));
    EXPECT_TRUE(check_derivation(*s, kb, systems::dDoublePrime));
}

TEST(Search, InconsistentGammaCanLackSorites) {
    auto g0 = kb_of("A a c\nA a' c\nA c c'\nA c' b\nA c' b'\nE b b'");
    const auto s0 = sentence(g0, "E a a'");
    EXPECT_TRUE(derives(g0, s0, systems::d));
    for (const auto& sys : {systems::d, systems::dPrime, systems::dDoublePrime}) {
        EXPECT_FALSE(find_sorites_exhaustive(g0, s0, rules(sys)));
        EXPECT_FALSE(synthesize_sorites(g0, s0, sys));
    }

    auto g1 = kb_of("A a' c\nA b c\nA c c'\nA c' a\nA c' b'\nO b b'");
    const auto s1 = sentence(g1, "O a a'");
    EXPECT_TRUE(derives(g1, s1, systems::dPrime));
    EXPECT_FALSE(find_sorites_exhaustive(g1, s1, rules(systems::dDoublePrime)));
}

TEST(Search, MembersOfGammaAreTheirOwnSorites) {
    for (const auto& kb : syl::testing::random_corpus(200, 71, 4, 6))
        for (const auto& s : kb.sentences()) {
            auto found = synthesize_sorites(kb, s, systems::d);
            ASSERT_TRUE(found);
            EXPECT_EQ(found->size(), 1u);
        }
}

TEST(Synthesis, RejectsNonSoritesSystems) {
    auto kb = kb_of("A a b");
    EXPECT_THROW(synthesize_sorites(kb, sentence(kb, "A a b"), systems::wd), std::invalid_argument);
    EXPECT_THROW(synthesize_sorites(kb, sentence(kb, "A a b"), systems::g), std::invalid_argument);
    EXPECT_FALSE(synthesize_sorites(kb, sentence(kb, "A b a"), systems::d));
}

// For consistent Γ every derivable sentence has a sorites.
TEST(Synthesis, ConsistentGammaAlwaysHasSorites) {
    for (const auto& kb : syl::testing::random_corpus(250, 73, 4, 6)) {
        if (!consistent(kb)) continue;
        for (const auto& sys : {systems::d, systems::dPrime, systems::dDoublePrime})
            for (const auto& s : all_sentences(kb.universe_size())) {
                if (!derives(kb, s, sys)) continue;
                auto r = synthesize_sorites_routed(kb, s, sys);
                ASSERT_TRUE(r.sorites) << render_kb(kb) << " / " << render(s, kb);
                EXPECT_TRUE(is_sorites(*r.sorites, kb, r.system));
                EXPECT_TRUE(check_derivation(*r.sorites, kb, r.system));
                EXPECT_EQ(r.sorites->back().sentence, s);
            }
    }
}

TEST(Synthesis, AgreesWithExhaustiveSearch) {
    for (const auto& kb : syl::testing::random_corpus(120, 79, 3, 5))
        for (const auto& sys : {systems::d, systems::dDoublePrime})
            for (const auto& s : all_sentences(kb.universe_size())) {
                if (!derives(kb, s, sys)) continue;
                const bool synth = synthesize_sorites(kb, s, sys).has_value();
                const bool brute = find_sorites_exhaustive(kb, s, rules(sys)).has_value();
                EXPECT_EQ(synth, brute) << render_kb(kb) << " / " << render(s, kb);
            }
}

TEST(Annotation, EssentiallyUniqueForDAndDPrime) {
    for (const auto& kb : syl::testing::random_corpus(150, 83, 4, 6)) {
        if (!consistent(kb)) continue;
        for (const auto& sys : {systems::d, systems::dPrime})
            for (const auto& s : all_sentences(kb.universe_size())) {
                auto found = synthesize_sorites(kb, s, sys);
                if (!found) continue;
                auto all = sorites_annotations(sentences_of(*found), kb, rules(sys));
                ASSERT_FALSE(all.empty());
                for (const auto& other : all) EXPECT_TRUE(essentially_same(all.front(), other));
            }
    }
}

TEST(Annotation, EssentiallySame) {
    auto kb = kb_of("A a a");
    Derivation x{{sentence(kb, "A a a"), Assumption{}}};
    Derivation y{{sentence(kb, "A a a"), RuleApp{RuleId::AId, {}}}};
    EXPECT_TRUE(essentially_same(x, y));
    Derivation z{{sentence(kb, "A a a"), RuleApp{RuleId::Apc, {}}}};
    EXPECT_FALSE(essentially_same(x, z));
}

TEST(DsRefutation, Examples) {
    auto kb = kb_of("A a b\nE a b");
    auto r = ds_refutation(kb);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->counter_proof.back().sentence, contradictory(r->sentence));
    EXPECT_TRUE(is_sorites(r->proof, kb, systems::d));
    EXPECT_TRUE(is_sorites(r->counter_proof, kb, systems::d));
    EXPECT_FALSE(ds_refutation(kb_of("A a b\nE b c")));
}

TEST(DsRefutation, EveryInconsistentGammaHasOne) {
    for (const auto& kb : syl::testing::random_corpus(300, 89, 4, 6)) {
        if (consistent(kb)) continue;
        auto r = ds_refutation(kb);
        ASSERT_TRUE(r) << render_kb(kb);
        EXPECT_TRUE(check_derivation(r->proof, kb, systems::d));
        EXPECT_TRUE(check_derivation(r->counter_proof, kb, systems::d));
    }
}

TEST(LengthBound, LongerSearchFindsNothingNew) {
    for (const auto& kb : syl::testing::random_corpus(60, 97, 3, 4))
        for (const auto& s : all_sentences(kb.universe_size())) {
            const auto rs = rules(systems::dDoublePrime);
            const bool bounded = find_sorites_exhaustive(kb, s, rs).has_value();
            const bool longer = find_sorites_exhaustive(kb, s, rs, sorites_length_bound(kb) + 6).has_value();
            EXPECT_EQ(bounded, longer) << render_kb(kb) << " / " << render(s, kb);
        }
}
