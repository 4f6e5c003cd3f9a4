#pragma once

// Reference implementations for cross-checking. Rule schemas are restated
// here; nothing below calls into the deduction engine.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "models.hpp"
#include "rules.hpp"

namespace syl::oracle {

namespace detail {

// Membership table over all 4·n² sentences.
class SentenceTable {
public:
    explicit SentenceTable(std::size_t n) : n_(n), bits_(4 * n * n, 0) {}

    std::size_t terms() const { return n_; }
    bool has(Quality q, std::size_t a, std::size_t b) const { return bits_[index(q, a, b)] != 0; }
    bool has(const Sentence& s) const { return has(s.quality, s.subject, s.predicate); }

    bool add(Quality q, std::size_t a, std::size_t b) {
        auto& bit = bits_[index(q, a, b)];
        if (bit) return false;
        bit = 1;
        return true;
    }
    bool add(const Sentence& s) { return add(s.quality, s.subject, s.predicate); }

    bool contradictory_pair() const {
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if ((has(Quality::A, a, b) && has(Quality::O, a, b)) || (has(Quality::E, a, b) && has(Quality::I, a, b)))
                    return true;
        return false;
    }

    void fill() { std::fill(bits_.begin(), bits_.end(), 1); }

    // Adds every member of other; true if anything was new.
    bool merge(const SentenceTable& other) {
        bool changed = false;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (other.bits_[i] && !bits_[i]) {
                bits_[i] = 1;
                changed = true;
            }
        return changed;
    }

    std::size_t count() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }

    std::set<Sentence> sentences() const {
        std::set<Sentence> out;
        for (auto q : kQualities)
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = 0; b < n_; ++b)
                    if (has(q, a, b)) out.insert({q, static_cast<TermId>(a), static_cast<TermId>(b)});
        return out;
    }

private:
    std::size_t index(Quality q, std::size_t a, std::size_t b) const {
        return (static_cast<std::size_t>(q) * n_ + a) * n_ + b;
    }

    std::size_t n_;
    std::vector<char> bits_;
};

struct Schema {
    RuleId rule;
    // Premises and conclusion over variables a=0, b=1, c=2.
    std::vector<std::array<int, 3>> premises; // {quality, subject var, predicate var}
    std::array<int, 3> conclusion;
};

inline const std::vector<Schema>& schemas() {
    constexpr int A = 0, E = 1, I = 2, O = 3;
    constexpr int a = 0, b = 1, c = 2;
    static const std::vector<Schema> table = {
        {RuleId::AId, {}, {A, a, a}},
        {RuleId::IId, {}, {I, a, a}},
        {RuleId::OId, {}, {O, a, a}},
        {RuleId::Apc, {{A, a, b}}, {I, b, a}},
        {RuleId::Ec, {{E, a, b}}, {E, b, a}},
        {RuleId::Ic, {{I, a, b}}, {I, b, a}},
        {RuleId::ESub, {{E, a, b}}, {O, a, b}},
        {RuleId::Barbara, {{A, a, b}, {A, b, c}}, {A, a, c}},
        {RuleId::Celarent, {{A, a, b}, {E, b, c}}, {E, a, c}},
        {RuleId::Darii, {{I, a, b}, {A, b, c}}, {I, a, c}},
        {RuleId::Ferio, {{I, a, b}, {E, b, c}}, {O, a, c}},
        {RuleId::Baroco, {{O, a, b}, {A, c, b}}, {O, a, c}},
        {RuleId::Bocardo, {{A, b, a}, {O, b, c}}, {O, a, c}},
        {RuleId::Ferison, {{I, b, a}, {E, b, c}}, {O, a, c}},
    };
    return table;
}

inline Sentence instantiate(const std::array<int, 3>& pat, const std::array<std::size_t, 3>& v) {
    return {static_cast<Quality>(pat[0]), static_cast<TermId>(v[pat[1]]), static_cast<TermId>(v[pat[2]])};
}

// Calls f(premises, conclusion) for every instantiation of the schema over
// n terms.
template <class F>
void for_each_instance(const Schema& s, std::size_t n, F&& f) {
    const std::size_t vars = s.premises.empty() ? 1 : s.premises.size() + 1;
    const std::size_t hi[3] = {n, vars > 1 ? n : 1, vars > 2 ? n : 1};
    std::array<std::size_t, 3> v{};
    std::vector<Sentence> premises(s.premises.size());
    for (v[0] = 0; v[0] < hi[0]; ++v[0])
        for (v[1] = 0; v[1] < hi[1]; ++v[1])
            for (v[2] = 0; v[2] < hi[2]; ++v[2]) {
                for (std::size_t i = 0; i < premises.size(); ++i) premises[i] = instantiate(s.premises[i], v);
                f(premises, instantiate(s.conclusion, v));
            }
}

// Repeated full rescans until nothing changes. With Co, a contradictory
// pair yields every sentence.
inline void naive_fixpoint(SentenceTable& t, const RuleSet& rs) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& s : schemas()) {
            if (!rs.contains(s.rule)) continue;
            for_each_instance(s, t.terms(), [&](const std::vector<Sentence>& premises, const Sentence& c) {
                for (const auto& p : premises)
                    if (!t.has(p)) return;
                if (t.add(c)) changed = true;
            });
        }
        if (rs.contains(RuleId::Co) && t.contradictory_pair()) {
            t.fill();
            return;
        }
    }
}

inline SentenceTable table_of(const KnowledgeBase& kb) {
    SentenceTable t(kb.universe_size());
    for (const auto& s : kb.sentences()) t.add(s);
    return t;
}

} // namespace detail

inline std::set<Sentence> naive_saturation(const KnowledgeBase& kb, const RuleSet& rs) {
    auto t = detail::table_of(kb);
    detail::naive_fixpoint(t, rs);
    return t.sentences();
}

inline std::set<Sentence> naive_saturation(const KnowledgeBase& kb, const SystemId& sys) {
    if (!is_direct(sys)) throw std::invalid_argument("naive_saturation expects a direct system");
    return naive_saturation(kb, rules(sys));
}

inline bool naive_inconsistent(const KnowledgeBase& kb, const RuleSet& rs) {
    auto t = detail::table_of(kb);
    detail::naive_fixpoint(t, rs);
    return t.contradictory_pair();
}

// Γ ⊢ σ in g or g_r: Γ ∪ {σ̂} is inconsistent under the direct rules.
inline bool naive_g_derives(const KnowledgeBase& kb, const Sentence& s, std::optional<RuleId> excluded = std::nullopt) {
    auto rs = base_rules(SystemKind::d);
    if (excluded) rs.erase(*excluded);
    return naive_inconsistent(kb.with(contradictory(s)), rs);
}

// g' and g'_r with Co applied as an ordinary rule of the fixpoint.
inline bool naive_gprime_derives(const KnowledgeBase& kb, const Sentence& s,
                                 std::optional<RuleId> excluded = std::nullopt) {
    auto rs = base_rules(SystemKind::gPrime);
    if (excluded) rs.erase(*excluded);
    auto t = detail::table_of(kb);
    detail::naive_fixpoint(t, rs);
    return t.has(s);
}

inline constexpr std::size_t kSequentTerms = 8;
inline constexpr std::size_t kSequentHypotheses = 16;

// Sequent-level saturation for g'' and its rule-deleted variants, with
// contexts ranging over subsets of U = Γ ∪ {σ̂}. Weakening is admissible in
// g'', so each context inherits the sequents of its subsets and two-premise
// rules combine sequents of one context.
inline bool sequent_derives(const KnowledgeBase& kb, const Sentence& s, std::optional<RuleId> excluded = std::nullopt) {
    const auto n = kb.universe_size();
    if (n > kSequentTerms) throw std::invalid_argument("sequent_derives supports at most 8 terms");
    std::vector<Sentence> hyp = kb.sentences();
    const auto hat = contradictory(s);
    if (!kb.contains(hat)) hyp.push_back(hat);
    if (hyp.size() > kSequentHypotheses) throw std::invalid_argument("too many hypotheses for sequent_derives");
    auto allowed = [&](RuleId r) { return r != excluded; };
    const std::size_t contexts = std::size_t{1} << hyp.size();
    std::vector<detail::SentenceTable> D(contexts, detail::SentenceTable(n));
    for (std::size_t c = 0; c < contexts; ++c) {
        if (allowed(RuleId::Ass))
            for (std::size_t i = 0; i < hyp.size(); ++i)
                if (c >> i & 1) D[c].add(hyp[i]);
        if (allowed(RuleId::AIdP))
            for (std::size_t a = 0; a < n; ++a) D[c].add(Quality::A, a, a);
    }
    RuleSet local;
    for (auto [primed, plain] : {std::pair{RuleId::ApcP, RuleId::Apc}, std::pair{RuleId::EcP, RuleId::Ec},
                                 std::pair{RuleId::BarbaraP, RuleId::Barbara},
                                 std::pair{RuleId::CelarentP, RuleId::Celarent}})
        if (allowed(primed)) local.insert(plain);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < contexts; ++c) {
            for (std::size_t i = 0; i < hyp.size(); ++i) {
                if (!(c >> i & 1)) continue;
                if (D[c].merge(D[c ^ (std::size_t{1} << i)])) changed = true;
            }
            const auto before = D[c].count();
            detail::naive_fixpoint(D[c], local);
            if (D[c].count() != before) changed = true;
            if (allowed(RuleId::Raa) && D[c].contradictory_pair()) {
                for (std::size_t i = 0; i < hyp.size(); ++i)
                    if (c >> i & 1)
                        if (D[c ^ (std::size_t{1} << i)].add(contradictory(hyp[i]))) changed = true;
            }
        }
    }
    std::size_t gamma = 0;
    for (std::size_t i = 0; i < hyp.size(); ++i)
        if (kb.contains(hyp[i])) gamma |= std::size_t{1} << i;
    return D[gamma].has(s);
}

// Every instantiation of the rule over the structure's terms preserves truth.
inline bool rule_valid_in(const Structure& m, RuleId r) {
    const auto n = m.term_count();
    if (r == RuleId::Co) {
        bool pair = false, all = true;
        for (auto q : kQualities)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    Sentence s{q, static_cast<TermId>(a), static_cast<TermId>(b)};
                    if (!m.satisfies(s)) all = false;
                    else if (m.satisfies(contradictory(s))) pair = true;
                }
        return !pair || all;
    }
    for (const auto& s : detail::schemas()) {
        if (s.rule != r) continue;
        bool ok = true;
        detail::for_each_instance(s, n, [&](const std::vector<Sentence>& premises, const Sentence& c) {
            if (!ok) return;
            for (const auto& p : premises)
                if (!m.satisfies(p)) return;
            ok = m.satisfies(c);
        });
        return ok;
    }
    throw std::invalid_argument(std::string(rule_name(r)) + " is not a direct rule");
}

inline bool all_rules_valid(const Structure& m, const RuleSet& rs) {
    for (auto r : rs.list())
        if (!rule_valid_in(m, r)) return false;
    return true;
}

inline bool brute_d_model(const Structure& m) { return all_rules_valid(m, base_rules(SystemKind::d)); }
inline bool brute_dprime_model(const Structure& m) { return all_rules_valid(m, base_rules(SystemKind::dPrime)); }

// ⟨B, R1, R2ᶜ, R2, R1ᶜ⟩ over its own elements satisfies every d-rule.
inline bool brute_df_model(const BitMatrix& r1, const BitMatrix& r2) {
    const auto n = r1.size();
    Structure m = Structure::blank(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        m.mu[x] = x;
        for (std::size_t y = 0; y < n; ++y) {
            m[Quality::A].assign(x, y, r1.test(x, y));
            m[Quality::O].assign(x, y, !r1.test(x, y));
            m[Quality::I].assign(x, y, r2.test(x, y));
            m[Quality::E].assign(x, y, !r2.test(x, y));
        }
    }
    return brute_d_model(m);
}

// Entailment preservation for g, checked on the largest Γ the structure
// satisfies, which suffices by monotonicity.
class GModelOracle {
public:
    bool operator()(const Structure& m) {
        const auto n = m.term_count();
        if (n > 3) throw std::invalid_argument("GModelOracle supports at most 3 terms");
        std::uint64_t key = 0;
        KnowledgeBase theory;
        theory.ensure_terms(n);
        std::size_t bit = 0;
        for (auto q : kQualities)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b, ++bit) {
                    Sentence s{q, static_cast<TermId>(a), static_cast<TermId>(b)};
                    if (m.satisfies(s)) {
                        key |= std::uint64_t{1} << bit;
                        theory.add(s);
                    }
                }
        key ^= static_cast<std::uint64_t>(n) << 60;
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool ok = true;
        for (const auto& s : all_sentences(n)) {
            if (theory.contains(s)) continue;
            if (naive_g_derives(theory, s)) {
                ok = false;
                break;
            }
        }
        memo_.emplace(key, ok);
        return ok;
    }

private:
    std::unordered_map<std::uint64_t, bool> memo_;
};

struct EnumSpec {
    std::size_t base_size = 1;
    std::size_t term_count = 1;
    // Exhaustive when unset, otherwise this many uniform samples.
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    bool surjective_mu = false;
};

namespace detail {

inline bool surjective(const std::vector<std::size_t>& mu, std::size_t base) {
    std::vector<char> hit(base, 0);
    for (auto x : mu) hit[x] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

} // namespace detail

// Calls f on every structure of the spec (or on the samples); f returns
// false to stop.
template <class F>
void for_each_structure(const EnumSpec& spec, F&& f) {
    const auto b = spec.base_size;
    const auto t = spec.term_count;
    if (b == 0) throw std::invalid_argument("base_size must be positive");
    const auto bits = 4 * b * b;
    Structure m = Structure::blank(b, t);
    auto load = [&](auto&& bit_at) {
        std::size_t k = 0;
        for (auto& r : m.rel)
            for (std::size_t x = 0; x < b; ++x)
                for (std::size_t y = 0; y < b; ++y) r.assign(x, y, bit_at(k++));
    };
    if (spec.samples) {
        std::mt19937_64 rng(spec.seed);
        std::uniform_int_distribution<std::size_t> pick(0, b - 1);
        for (std::size_t i = 0; i < *spec.samples;) {
            load([&](std::size_t) { return (rng() & 1) != 0; });
            for (auto& x : m.mu) x = pick(rng);
            if (spec.surjective_mu && !detail::surjective(m.mu, b)) continue;
            ++i;
            if (!f(m)) return;
        }
        return;
    }
    if (bits >= 63) throw std::invalid_argument("exhaustive enumeration is limited to base_size 3");
    std::size_t maps = 1;
    for (std::size_t i = 0; i < t; ++i) maps *= b;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
        load([&](std::size_t k) { return (mask >> k & 1) != 0; });
        for (std::size_t code = 0; code < maps; ++code) {
            auto rest = code;
            for (auto& x : m.mu) {
                x = rest % b;
                rest /= b;
            }
            if (spec.surjective_mu && !detail::surjective(m.mu, b)) continue;
            if (!f(m)) return;
        }
    }
}

// The first structure on which the two predicates disagree.
inline std::optional<Structure> enumerate_and_check(const EnumSpec& spec,
                                                    const std::function<bool(const Structure&)>& closed_form,
                                                    const std::function<bool(const Structure&)>& brute) {
    std::optional<Structure> out;
    for_each_structure(spec, [&](const Structure& m) {
        if (closed_form(m) == brute(m)) return true;
        out = m;
        return false;
    });
    return out;
}

} // namespace syl::oracle
