#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "deduction.hpp"

namespace syl {

// A sorites is a single spine: line 0 is a leaf, and every later step either
// rewrites the spine by a one-premise rule or introduces a leaf that is
// immediately combined with the spine by a two-premise rule.
enum class LineShape { Leaf, Unary, Binary };

namespace detail {

inline bool is_leaf_sentence(const Sentence& s, const KnowledgeBase& kb, const RuleSet& rules) {
    if (kb.contains(s)) return true;
    if (!is_reflexive(s)) return false;
    switch (s.quality) {
    case Quality::A: return rules.contains(RuleId::AId);
    case Quality::I: return rules.contains(RuleId::IId);
    case Quality::O: return rules.contains(RuleId::OId);
    default: return false;
    }
}

inline std::vector<Justification> leaf_justifications(const Sentence& s, const KnowledgeBase& kb,
                                                      const RuleSet& rules) {
    std::vector<Justification> out;
    if (kb.contains(s)) out.emplace_back(Assumption{});
    if (is_reflexive(s)) {
        for (auto r : {RuleId::AId, RuleId::IId, RuleId::OId}) {
            if (!rules.contains(r)) continue;
            if (apply_rule(r, {}, s.subject) == s) out.emplace_back(RuleApp{r, {}});
        }
    }
    return out;
}

inline std::vector<RuleApp> unary_justifications(const std::vector<Sentence>& seq, std::size_t j,
                                                 const RuleSet& rules) {
    std::vector<RuleApp> out;
    if (j < 1) return out;
    std::array<Sentence, 1> prem{seq[j - 1]};
    for (auto r : rules.list())
        if (arity(r) == 1 && !is_sequent_rule(r) && apply_rule(r, prem) == seq[j]) out.push_back({r, {j - 1}});
    return out;
}

inline std::vector<RuleApp> binary_justifications(const std::vector<Sentence>& seq, std::size_t j,
                                                  const RuleSet& rules) {
    std::vector<RuleApp> out;
    if (j < 2) return out;
    std::array<Sentence, 2> fwd{seq[j - 2], seq[j - 1]};
    std::array<Sentence, 2> rev{seq[j - 1], seq[j - 2]};
    for (auto r : rules.list()) {
        if (arity(r) != 2 || is_sequent_rule(r) || r == RuleId::Co) continue;
        if (apply_rule(r, fwd) == seq[j]) out.push_back({r, {j - 2, j - 1}});
        if (apply_rule(r, rev) == seq[j]) out.push_back({r, {j - 1, j - 2}});
    }
    return out;
}

inline bool pairwise_distinct(std::vector<Sentence> seq) {
    std::sort(seq.begin(), seq.end());
    return std::adjacent_find(seq.begin(), seq.end()) == seq.end();
}

// Shapes allowed at line j given the shape of line j-1.
inline std::vector<LineShape> next_shapes(std::size_t j, LineShape prev, std::size_t k) {
    if (j == 0) return {LineShape::Leaf};
    std::vector<LineShape> out;
    if (prev == LineShape::Leaf && j >= 2) return {LineShape::Binary};
    out.push_back(LineShape::Unary);
    if (j + 1 < k) out.push_back(LineShape::Leaf); // a leaf needs a following binary step
    return out;
}

// Walks every shape sequence and per-line justification; f returns false to
// stop early.
inline void for_each_annotation(const std::vector<Sentence>& seq, const KnowledgeBase& kb, const RuleSet& rules,
                                const std::function<bool(const Derivation&)>& f) {
    const auto k = seq.size();
    if (k == 0 || !pairwise_distinct(seq)) return;
    Derivation current;
    bool stop = false;
    std::function<void(std::size_t, LineShape)> go = [&](std::size_t j, LineShape prev) {
        if (stop) return;
        if (j == k) {
            stop = !f(current);
            return;
        }
        for (auto shape : next_shapes(j, prev, k)) {
            std::vector<Justification> options;
            switch (shape) {
            case LineShape::Leaf: options = leaf_justifications(seq[j], kb, rules); break;
            case LineShape::Unary:
                for (auto& a : unary_justifications(seq, j, rules)) options.emplace_back(a);
                break;
            case LineShape::Binary:
                for (auto& a : binary_justifications(seq, j, rules)) options.emplace_back(a);
                break;
            }
            for (auto& why : options) {
                current.push_back({seq[j], why});
                go(j + 1, shape);
                current.pop_back();
                if (stop) return;
            }
        }
    };
    go(0, LineShape::Leaf);
}

} // namespace detail

inline std::vector<Sentence> sentences_of(const Derivation& d) {
    std::vector<Sentence> out;
    for (const auto& line : d) out.push_back(line.sentence);
    return out;
}

// First sorites annotation of the sentence sequence, if any.
inline std::optional<Derivation> sorites_annotation(const std::vector<Sentence>& seq, const KnowledgeBase& kb,
                                                    const RuleSet& rules) {
    std::optional<Derivation> out;
    detail::for_each_annotation(seq, kb, rules, [&](const Derivation& d) {
        out = d;
        return false;
    });
    return out;
}

inline std::vector<Derivation> sorites_annotations(const std::vector<Sentence>& seq, const KnowledgeBase& kb,
                                                   const RuleSet& rules) {
    std::vector<Derivation> out;
    detail::for_each_annotation(seq, kb, rules, [&](const Derivation& d) {
        out.push_back(d);
        return true;
    });
    return out;
}

inline bool is_sorites(const std::vector<Sentence>& seq, const KnowledgeBase& kb, const RuleSet& rules) {
    return sorites_annotation(seq, kb, rules).has_value();
}

inline bool is_sorites(const Derivation& d, const KnowledgeBase& kb, const RuleSet& rules) {
    return is_sorites(sentences_of(d), kb, rules);
}

inline bool is_sorites(const Derivation& d, const KnowledgeBase& kb, const SystemId& sys) {
    detail::require_direct(sys);
    return is_sorites(d, kb, rules(sys));
}

// Annotations that differ only by reading a leaf as an assumption or as an
// instance of A-Id.
inline bool essentially_same(const Derivation& x, const Derivation& y) {
    if (x.size() != y.size()) return false;
    auto leafish = [](const Justification& j) {
        if (std::holds_alternative<Assumption>(j)) return true;
        return std::get<RuleApp>(j).rule == RuleId::AId;
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].sentence != y[i].sentence) return false;
        if (leafish(x[i].why) && leafish(y[i].why)) continue;
        if (x[i].why != y[i].why) return false;
    }
    return true;
}

namespace detail {

// One spine step: an optional leaf followed by the new spine sentence.
struct SpineStep {
    std::optional<Sentence> leaf;
    Sentence result;
};

using Spine = std::vector<SpineStep>;

class SoritesBuilder {
public:
    SoritesBuilder(const KnowledgeBase& kb, RuleSet rules) : kb_(kb), rules_(rules), chains_(kb) {}

    std::optional<Derivation> build(const Sentence& target) {
        std::vector<Spine> candidates;
        switch (target.quality) {
        case Quality::A: candidates = a_spines(target.subject, target.predicate); break;
        case Quality::E: candidates = e_spines(target.subject, target.predicate); break;
        case Quality::I: candidates = i_spines(target.subject, target.predicate); break;
        case Quality::O: candidates = o_spines(target.subject, target.predicate); break;
        }
        std::optional<Derivation> best;
        for (auto& spine : candidates) {
            auto seq = flatten(normalize(spine, target));
            if (seq.empty() || seq.back() != target) continue;
            if (best && best->size() <= seq.size()) continue;
            if (auto ann = sorites_annotation(seq, kb_, rules_)) best = std::move(ann);
        }
        return best;
    }

private:
    using Q = Quality;

    std::optional<std::vector<TermId>> chain(TermId from, TermId to) const { return chains_.chain(from, to); }

    static Sentence sen(Q q, TermId x, TermId y) { return Sentence{q, x, y}; }

    static std::optional<Sentence> apply1(RuleId r, const Sentence& s) {
        std::array<Sentence, 1> p{s};
        return apply_rule(r, p);
    }

    static std::optional<Sentence> apply2(RuleId r, const Sentence& x, const Sentence& y) {
        std::array<Sentence, 2> p{x, y};
        return apply_rule(r, p);
    }

    // Appends a one-premise step; false if the rule does not fire.
    static bool unary(Spine& s, RuleId r) {
        auto next = apply1(r, s.back().result);
        if (!next) return false;
        s.push_back({std::nullopt, *next});
        return true;
    }

    static bool with_leaf(Spine& s, const Sentence& leaf, RuleId r, bool leaf_first) {
        auto next = leaf_first ? apply2(r, leaf, s.back().result) : apply2(r, s.back().result, leaf);
        if (!next) return false;
        s.push_back({leaf, *next});
        return true;
    }

    // Spine I u x becomes I u y along an x-y chain.
    bool darii_forward(Spine& s, TermId y) const {
        auto c = chain(s.back().result.predicate, y);
        if (!c) return false;
        for (std::size_t j = 1; j < c->size(); ++j)
            if (!with_leaf(s, sen(Q::A, (*c)[j - 1], (*c)[j]), RuleId::Darii, false)) return false;
        return true;
    }

    // Spine E p q becomes E z q along a z-p chain.
    bool celarent_back(Spine& s, TermId z) const {
        auto c = chain(z, s.back().result.subject);
        if (!c) return false;
        for (std::size_t j = c->size() - 1; j-- > 0;)
            if (!with_leaf(s, sen(Q::A, (*c)[j], (*c)[j + 1]), RuleId::Celarent, true)) return false;
        return true;
    }

    // Spine O x q becomes O x y along a y-q chain.
    bool baroco_back(Spine& s, TermId y) const {
        auto c = chain(y, s.back().result.predicate);
        if (!c) return false;
        for (std::size_t j = c->size() - 1; j-- > 0;)
            if (!with_leaf(s, sen(Q::A, (*c)[j], (*c)[j + 1]), RuleId::Baroco, false)) return false;
        return true;
    }

    // Spine O x y becomes O z y along an x-z chain.
    bool bocardo_forward(Spine& s, TermId z) const {
        auto c = chain(s.back().result.subject, z);
        if (!c) return false;
        for (std::size_t j = 1; j < c->size(); ++j)
            if (!with_leaf(s, sen(Q::A, (*c)[j - 1], (*c)[j]), RuleId::Bocardo, true)) return false;
        return true;
    }

    static Spine start(const Sentence& s) { return Spine{{std::nullopt, s}}; }

    std::vector<Spine> a_spines(TermId a, TermId b) const {
        if (a == b) return {start(sen(Q::A, a, a))};
        auto c = chain(a, b);
        if (!c) return {};
        Spine s = start(sen(Q::A, (*c)[0], (*c)[1]));
        for (std::size_t j = 2; j < c->size(); ++j)
            with_leaf(s, sen(Q::A, (*c)[j - 1], (*c)[j]), RuleId::Barbara, false);
        return {s};
    }

    std::vector<Spine> i_spines(TermId a, TermId b) const {
        std::vector<Spine> out;
        auto target = sen(Q::I, a, b);
        if (kb_.contains(target)) out.push_back(start(target));
        // Apc on an A-spine.
        for (auto s : a_spines(b, a))
            if (unary(s, RuleId::Apc)) out.push_back(s);
        // A common lower bound x: Apc then Darii along the other chain.
        for (TermId x = 0; x < kb_.universe_size(); ++x) {
            if (!chain(x, a) || !chain(x, b)) continue;
            for (auto s : a_spines(x, a))
                if (unary(s, RuleId::Apc) && darii_forward(s, b)) out.push_back(s);
            for (auto s : a_spines(x, b))
                if (unary(s, RuleId::Apc) && darii_forward(s, a) && unary(s, RuleId::Ic)) out.push_back(s);
        }
        // An I-leaf spread up both chains.
        for (const auto& leaf : kb_.sentences()) {
            if (leaf.quality != Q::I) continue;
            for (int variant = 0; variant < 4; ++variant) {
                Spine s = start(leaf);
                bool ok = true;
                auto step = [&](bool converse, TermId y) {
                    if (!ok) return;
                    if (converse) ok = unary(s, RuleId::Ic);
                    if (ok) ok = darii_forward(s, y);
                };
                switch (variant) {
                case 0: // I u v, up v to b, Ic, up u to a, Ic
                    step(false, b);
                    step(true, a);
                    ok = ok && unary(s, RuleId::Ic);
                    break;
                case 1: // up v to a, Ic, up u to b
                    step(false, a);
                    step(true, b);
                    break;
                case 2: // Ic, up u to a, Ic, up v to b
                    step(true, a);
                    step(true, b);
                    break;
                default: // Ic, up u to b, Ic, up v to a, Ic
                    step(true, b);
                    step(true, a);
                    ok = ok && unary(s, RuleId::Ic);
                    break;
                }
                if (ok) out.push_back(s);
            }
        }
        return out;
    }

    // E a b from an E-leaf pushed down the a- and b-chains.
    std::vector<Spine> e_spines(TermId a, TermId b) const {
        std::vector<Spine> out;
        auto target = sen(Q::E, a, b);
        if (kb_.contains(target)) out.push_back(start(target));
        for (const auto& leaf : kb_.sentences()) {
            if (leaf.quality != Q::E) continue;
            for (bool swap : {false, true}) {
                Spine base = start(leaf);
                if (swap && !unary(base, RuleId::Ec)) continue;
                const TermId p = base.back().result.subject;
                const TermId q = base.back().result.predicate;
                if (!chain(a, p) || !chain(b, q)) continue;
                Spine v1 = base;
                if (celarent_back(v1, a) && unary(v1, RuleId::Ec) && celarent_back(v1, b) && unary(v1, RuleId::Ec))
                    out.push_back(v1);
                Spine v2 = base;
                if (unary(v2, RuleId::Ec) && celarent_back(v2, b) && unary(v2, RuleId::Ec) && celarent_back(v2, a))
                    out.push_back(v2);
            }
        }
        return out;
    }

    bool derivable(const Sentence& s) const { return derives(kb_, s, systems::dDoublePrime); }

    std::vector<Spine> o_spines(TermId a, TermId b) const {
        std::vector<Spine> out;
        auto target = sen(Q::O, a, b);
        if (kb_.contains(target)) out.push_back(start(target));
        const auto n = kb_.universe_size();
        // An O-leaf moved by Baroco and Bocardo.
        for (const auto& leaf : kb_.sentences()) {
            if (leaf.quality != Q::O) continue;
            Spine v1 = start(leaf);
            if (baroco_back(v1, b) && bocardo_forward(v1, a)) out.push_back(v1);
            Spine v2 = start(leaf);
            if (bocardo_forward(v2, a) && baroco_back(v2, b)) out.push_back(v2);
        }
        auto finish = [&](Spine s) {
            if (baroco_back(s, b) && bocardo_forward(s, a)) out.push_back(std::move(s));
        };
        std::vector<TermId> below_a;
        for (TermId x = 0; x < n; ++x)
            if (chain(x, a)) below_a.push_back(x);
        // An I-spine met by an E-leaf through Ferio or Ferison.
        for (const auto& leaf : kb_.sentences()) {
            if (leaf.quality != Q::E) continue;
            const TermId p = leaf.subject;
            if (!chain(b, leaf.predicate)) continue;
            for (auto x : below_a) {
                if (derivable(sen(Q::I, x, p)))
                    for (auto s : i_spines(x, p))
                        if (with_leaf(s, leaf, RuleId::Ferio, false)) finish(s);
                if (rules_.contains(RuleId::Ferison) && derivable(sen(Q::I, p, x)))
                    for (auto s : i_spines(p, x))
                        if (with_leaf(s, leaf, RuleId::Ferison, false)) finish(s);
            }
        }
        // An E-spine met by an I-leaf, or turned by E-sub.
        for (auto x : below_a) {
            for (const auto& leaf : kb_.sentences()) {
                if (leaf.quality != Q::I) continue;
                if (leaf.subject == x && derivable(sen(Q::E, leaf.predicate, b)))
                    for (auto s : e_spines(leaf.predicate, b))
                        if (with_leaf(s, leaf, RuleId::Ferio, true)) finish(s);
                if (leaf.predicate == x && rules_.contains(RuleId::Ferison) &&
                    derivable(sen(Q::E, leaf.subject, b)))
                    for (auto s : e_spines(leaf.subject, b))
                        if (with_leaf(s, leaf, RuleId::Ferison, true)) finish(s);
            }
            if (rules_.contains(RuleId::ESub) && derivable(sen(Q::E, x, b)))
                for (auto s : e_spines(x, b))
                    if (unary(s, RuleId::ESub)) finish(s);
        }
        return out;
    }

    // Truncates at the first occurrence of the target and cuts spine loops.
    static Spine normalize(Spine s, const Sentence& target) {
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i].result == target) {
                s.resize(i + 1);
                break;
            }
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < s.size() && !changed; ++i)
                for (std::size_t j = s.size(); j-- > i + 1;)
                    if (s[j].result == s[i].result) {
                        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                s.begin() + static_cast<std::ptrdiff_t>(j) + 1);
                        changed = true;
                        break;
                    }
        }
        return s;
    }

    static std::vector<Sentence> flatten(const Spine& s) {
        std::vector<Sentence> out;
        for (const auto& step : s) {
            if (step.leaf) out.push_back(*step.leaf);
            out.push_back(step.result);
        }
        return out;
    }

    const KnowledgeBase& kb_;
    RuleSet rules_;
    ChainIndex chains_;
};

// Depth-first search over spines with pairwise distinct lines.
class SoritesSearch {
public:
    SoritesSearch(const KnowledgeBase& kb, RuleSet rules, Sentence target, std::size_t max_len)
        : kb_(kb), rules_(rules), target_(target), max_len_(max_len), n_(kb.universe_size()) {
        for (const auto& s : kb.sentences()) leaves_.push_back(s);
        for (TermId x = 0; x < n_; ++x)
            for (auto q : kQualities) {
                Sentence s{q, x, x};
                if (!kb.contains(s) && is_leaf_sentence(s, kb, rules)) leaves_.push_back(s);
            }
        for (auto r : rules.list()) {
            if (is_sequent_rule(r) || r == RuleId::Co) continue;
            if (arity(r) == 1) unary_.push_back(r);
            if (arity(r) == 2) binary_.push_back(r);
        }
        used_.assign(4 * n_ * n_, 0);
    }

    std::optional<std::vector<Sentence>> run() {
        for (const auto& leaf : leaves_) {
            push(leaf);
            if (dfs()) return seq_;
            pop();
        }
        return std::nullopt;
    }

private:
    bool used(const Sentence& s) const { return used_[sentence_code(s, n_)] != 0; }
    void push(const Sentence& s) {
        used_[sentence_code(s, n_)] = 1;
        seq_.push_back(s);
    }
    void pop() {
        used_[sentence_code(seq_.back(), n_)] = 0;
        seq_.pop_back();
    }

    std::vector<std::uint64_t> state_key() const {
        std::vector<std::uint64_t> key((used_.size() + 63) / 64 + 1, 0);
        for (std::size_t i = 0; i < used_.size(); ++i)
            if (used_[i]) key[i / 64] |= std::uint64_t{1} << (i % 64);
        key.back() = sentence_code(seq_.back(), n_);
        return key;
    }

    bool dfs() {
        const Sentence spine = seq_.back();
        if (spine == target_) return true;
        if (seq_.size() >= max_len_) return false;
        auto key = state_key();
        if (failed_.count(key)) return false;
        for (auto r : unary_) {
            std::array<Sentence, 1> p{spine};
            auto next = apply_rule(r, p);
            if (!next || used(*next)) continue;
            push(*next);
            if (dfs()) return true;
            pop();
        }
        if (seq_.size() + 2 <= max_len_) {
            for (const auto& leaf : leaves_) {
                if (used(leaf)) continue;
                for (auto r : binary_) {
                    std::array<Sentence, 2> fwd{spine, leaf};
                    std::array<Sentence, 2> rev{leaf, spine};
                    for (auto next : {apply_rule(r, fwd), apply_rule(r, rev)}) {
                        if (!next || *next == leaf || used(*next)) continue;
                        push(leaf);
                        push(*next);
                        if (dfs()) return true;
                        pop();
                        pop();
                    }
                }
            }
        }
        failed_.insert(std::move(key));
        return false;
    }

    const KnowledgeBase& kb_;
    RuleSet rules_;
    Sentence target_;
    std::size_t max_len_;
    std::size_t n_;
    std::vector<Sentence> leaves_;
    std::vector<RuleId> unary_, binary_;
    std::vector<char> used_;
    std::vector<Sentence> seq_;
    std::set<std::vector<std::uint64_t>> failed_;
};

} // namespace detail

// No sorites is longer than this: leaves are distinct members of Γ or
// zero-ary instances, each introduces at most one binary step, and at most
// two one-premise steps can follow one another without repeating a line.
inline std::size_t sorites_length_bound(const KnowledgeBase& kb) { return 4 * (kb.size() + kb.universe_size()); }

inline std::optional<Derivation> find_sorites_exhaustive(const KnowledgeBase& kb, const Sentence& target,
                                                         const RuleSet& rules, std::size_t max_len) {
    detail::SoritesSearch search(kb, rules, target, max_len);
    auto seq = search.run();
    if (!seq) return std::nullopt;
    return sorites_annotation(*seq, kb, rules);
}

inline std::optional<Derivation> find_sorites_exhaustive(const KnowledgeBase& kb, const Sentence& target,
                                                         const RuleSet& rules) {
    return find_sorites_exhaustive(kb, target, rules, sorites_length_bound(kb));
}

// Size limit for falling back to exhaustive search when no chain layout
// yields a sorites.
inline constexpr std::size_t kSoritesSearchTerms = 6;
inline constexpr std::size_t kSoritesSearchSentences = 8;

namespace detail {

inline std::optional<Derivation> constructed_sorites(const KnowledgeBase& kb, const Sentence& s,
                                                     const RuleSet& rules) {
    return SoritesBuilder(kb, rules).build(s);
}

} // namespace detail

// A sorites of s from Γ in a direct system of the d-family (or a rule-deleted
// variant), built from chain layouts; none when s is not derivable or no
// sorites exists.
inline std::optional<Derivation> synthesize_sorites(const KnowledgeBase& kb, const Sentence& s,
                                                    const SystemId& sys) {
    detail::require_direct(sys);
    if (sys.kind == SystemKind::wd || sys.kind == SystemKind::pd)
        throw std::invalid_argument("sorites are defined for d, d' and d''");
    if (!derives(kb, s, sys)) return std::nullopt;
    const auto rs = rules(sys);
    if (auto built = detail::constructed_sorites(kb, s, rs)) return built;
    if (kb.universe_size() <= kSoritesSearchTerms && kb.size() <= kSoritesSearchSentences)
        return find_sorites_exhaustive(kb, s, rs);
    return std::nullopt;
}

struct RoutedSorites {
    std::optional<Derivation> sorites;
    SystemId system;
};

// d' requests that have no d'-sorites are answered in d'', which derives the
// same sentences.
inline RoutedSorites synthesize_sorites_routed(const KnowledgeBase& kb, const Sentence& s, const SystemId& sys) {
    auto first = synthesize_sorites(kb, s, sys);
    if (first || sys != systems::dPrime) return {std::move(first), sys};
    return {synthesize_sorites(kb, s, systems::dDoublePrime), systems::dDoublePrime};
}

struct DsRefutation {
    Sentence sentence;
    Derivation proof;
    Derivation counter_proof;
};

// For d-inconsistent Γ, a sentence with d-sorites of both it and its
// contradictory.
inline std::optional<DsRefutation> ds_refutation(const KnowledgeBase& kb) {
    const auto closure = saturate(kb, systems::d);
    if (!find_contradiction(closure)) return std::nullopt;
    const auto n = closure.size();
    for (auto q : {Quality::A, Quality::E}) {
        const auto both = closure[q] & closure[contradictory(q)];
        for (std::size_t x = 0; x < n; ++x) {
            std::optional<DsRefutation> found;
            both.for_each_in_row(x, [&](std::size_t y) {
                if (found) return;
                Sentence s{q, static_cast<TermId>(x), static_cast<TermId>(y)};
                auto p = synthesize_sorites(kb, s, systems::d);
                if (!p) return;
                auto c = synthesize_sorites(kb, contradictory(s), systems::d);
                if (c) found = DsRefutation{s, std::move(*p), std::move(*c)};
            });
            if (found) return found;
        }
    }
    return std::nullopt;
}

} // namespace syl
