#pragma once

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "bitmatrix.hpp"
#include "core.hpp"
#include "rules.hpp"

namespace syl {

struct ClosureRelations {
    std::vector<TermId> terms;
    std::array<BitMatrix, 4> rel;

    ClosureRelations() = default;
    explicit ClosureRelations(std::size_t n) : rel{BitMatrix(n), BitMatrix(n), BitMatrix(n), BitMatrix(n)} {
        terms.resize(n);
        for (std::size_t i = 0; i < n; ++i) terms[i] = static_cast<TermId>(i);
    }

    std::size_t size() const { return terms.size(); }
    const BitMatrix& operator[](Quality q) const { return rel[static_cast<std::size_t>(q)]; }
    BitMatrix& operator[](Quality q) { return rel[static_cast<std::size_t>(q)]; }

    bool contains(const Sentence& s) const { return (*this)[s.quality].test(s.subject, s.predicate); }

    std::set<Sentence> sentences() const {
        std::set<Sentence> out;
        for (auto q : kQualities)
            for (std::size_t x = 0; x < size(); ++x)
                (*this)[q].for_each_in_row(x, [&](std::size_t y) {
                    out.insert({q, static_cast<TermId>(x), static_cast<TermId>(y)});
                });
        return out;
    }

    std::size_t count() const { return rel[0].count() + rel[1].count() + rel[2].count() + rel[3].count(); }

    friend bool operator==(const ClosureRelations&, const ClosureRelations&) = default;
};

struct Assumption {
    friend bool operator==(const Assumption&, const Assumption&) = default;
};

struct RuleApp {
    RuleId rule;
    std::vector<std::size_t> premises;
    friend bool operator==(const RuleApp&, const RuleApp&) = default;
};

using Justification = std::variant<Assumption, RuleApp>;

struct DerivationLine {
    Sentence sentence;
    Justification why;
    friend bool operator==(const DerivationLine&, const DerivationLine&) = default;
};

using Derivation = std::vector<DerivationLine>;

namespace detail {

inline void require_direct(const SystemId& sys) {
    if (!is_direct(sys)) throw std::invalid_argument("system " + system_name(sys) + " is not a direct system");
}

// One recorded way of obtaining a closure fact.
struct Provenance {
    bool assumption = false;
    RuleId rule = RuleId::AId;
    std::uint8_t count = 0;
    std::array<std::uint32_t, 2> premises{};
};

// Worklist fixpoint over bit matrices; each fact is expanded once, with the
// partner premise looked up by row scans.
class SemiNaive {
public:
    SemiNaive(const KnowledgeBase& kb, RuleSet rules, bool track)
        : n_(kb.universe_size()), rules_(rules), out_(n_) {
        for (auto& m : transposed_) m = BitMatrix(n_);
        if (track) provenance_.resize(4 * n_ * n_);
        tracking_ = track;
        for (const auto& s : kb.sentences()) add(s.quality, s.subject, s.predicate, Provenance{true});
        static constexpr std::array<std::pair<RuleId, Quality>, 3> axioms = {
            {{RuleId::AId, Quality::A}, {RuleId::IId, Quality::I}, {RuleId::OId, Quality::O}}};
        for (auto [rule, q] : axioms) {
            if (!rules_.contains(rule)) continue;
            for (TermId x = 0; x < n_; ++x) add(q, x, x, Provenance{false, rule, 0, {}});
        }
        while (!queue_.empty()) {
            auto code = queue_.front();
            queue_.pop_front();
            expand(code);
        }
    }

    const ClosureRelations& closure() const { return out_; }
    const std::vector<Provenance>& provenance() const { return provenance_; }

private:
    using Q = Quality;

    std::uint32_t code(Q q, std::size_t x, std::size_t y) const {
        return static_cast<std::uint32_t>(sentence_code(Sentence{q, static_cast<TermId>(x), static_cast<TermId>(y)}, n_));
    }

    BitMatrix& fwd(Q q) { return out_[q]; }
    BitMatrix& bwd(Q q) { return transposed_[static_cast<std::size_t>(q)]; }

    void add(Q q, std::size_t x, std::size_t y, Provenance p) {
        if (fwd(q).test(x, y)) return;
        fwd(q).set(x, y);
        bwd(q).set(y, x);
        auto c = code(q, x, y);
        if (tracking_) provenance_[c] = p;
        queue_.push_back(c);
    }

    void derive(RuleId r, Q q, std::size_t x, std::size_t y, std::uint32_t p0) {
        add(q, x, y, Provenance{false, r, 1, {p0, 0}});
    }
    void derive(RuleId r, Q q, std::size_t x, std::size_t y, std::uint32_t p0, std::uint32_t p1) {
        add(q, x, y, Provenance{false, r, 2, {p0, p1}});
    }

    template <class F>
    void scan(BitMatrix& m, std::size_t row, F&& f) {
        auto copy = m.row_copy(row);
        BitMatrix::for_each_bit(copy.data(), copy.size(), f);
    }

    bool has(RuleId r) const { return rules_.contains(r); }

    void expand(std::uint32_t c) {
        auto s = sentence_from_code(c, n_);
        std::size_t x = s.subject, y = s.predicate;
        switch (s.quality) {
        case Q::A:
            if (has(RuleId::Apc)) derive(RuleId::Apc, Q::I, y, x, c);
            if (has(RuleId::Barbara)) {
                scan(fwd(Q::A), y, [&](std::size_t z) { derive(RuleId::Barbara, Q::A, x, z, c, code(Q::A, y, z)); });
                scan(bwd(Q::A), x, [&](std::size_t w) { derive(RuleId::Barbara, Q::A, w, y, code(Q::A, w, x), c); });
            }
            if (has(RuleId::Celarent))
                scan(fwd(Q::E), y, [&](std::size_t z) { derive(RuleId::Celarent, Q::E, x, z, c, code(Q::E, y, z)); });
            if (has(RuleId::Darii))
                scan(bwd(Q::I), x, [&](std::size_t w) { derive(RuleId::Darii, Q::I, w, y, code(Q::I, w, x), c); });
            if (has(RuleId::Baroco))
                scan(bwd(Q::O), y, [&](std::size_t w) { derive(RuleId::Baroco, Q::O, w, x, code(Q::O, w, y), c); });
            if (has(RuleId::Bocardo))
                scan(fwd(Q::O), x, [&](std::size_t z) { derive(RuleId::Bocardo, Q::O, y, z, c, code(Q::O, x, z)); });
            break;
        case Q::E:
            if (has(RuleId::Ec)) derive(RuleId::Ec, Q::E, y, x, c);
            if (has(RuleId::Celarent))
                scan(bwd(Q::A), x, [&](std::size_t w) { derive(RuleId::Celarent, Q::E, w, y, code(Q::A, w, x), c); });
            if (has(RuleId::Ferio))
                scan(bwd(Q::I), x, [&](std::size_t w) { derive(RuleId::Ferio, Q::O, w, y, code(Q::I, w, x), c); });
            if (has(RuleId::ESub)) derive(RuleId::ESub, Q::O, x, y, c);
            if (has(RuleId::Ferison))
                scan(fwd(Q::I), x, [&](std::size_t w) { derive(RuleId::Ferison, Q::O, w, y, code(Q::I, x, w), c); });
            break;
        case Q::I:
            if (has(RuleId::Ic)) derive(RuleId::Ic, Q::I, y, x, c);
            if (has(RuleId::Darii))
                scan(fwd(Q::A), y, [&](std::size_t z) { derive(RuleId::Darii, Q::I, x, z, c, code(Q::A, y, z)); });
            if (has(RuleId::Ferio))
                scan(fwd(Q::E), y, [&](std::size_t z) { derive(RuleId::Ferio, Q::O, x, z, c, code(Q::E, y, z)); });
            if (has(RuleId::Ferison))
                scan(fwd(Q::E), x, [&](std::size_t z) { derive(RuleId::Ferison, Q::O, y, z, c, code(Q::E, x, z)); });
            break;
        case Q::O:
            if (has(RuleId::Baroco))
                scan(bwd(Q::A), y, [&](std::size_t w) { derive(RuleId::Baroco, Q::O, x, w, c, code(Q::A, w, y)); });
            if (has(RuleId::Bocardo))
                scan(fwd(Q::A), x, [&](std::size_t w) { derive(RuleId::Bocardo, Q::O, w, y, code(Q::A, x, w), c); });
            break;
        }
    }

    std::size_t n_;
    RuleSet rules_;
    ClosureRelations out_;
    std::array<BitMatrix, 4> transposed_;
    bool tracking_ = false;
    std::vector<Provenance> provenance_;
    std::deque<std::uint32_t> queue_;
};

inline BitMatrix read_relation(const KnowledgeBase& kb, Quality q) {
    BitMatrix m(kb.universe_size());
    for (const auto& s : kb.sentences())
        if (s.quality == q) m.set(s.subject, s.predicate);
    return m;
}

// Closure of d, d' and d'' read off the A-graph by the chain
// characterizations: A is reachability, E spreads an E-pair down both
// A-chains, I needs a common A-lower bound (d') and O in d' comes from
// I·E or from an O-pair spread down A-chains.
inline ClosureRelations closed_form_closure(const KnowledgeBase& kb, bool primed) {
    const auto n = kb.universe_size();
    ClosureRelations out(n);
    BitMatrix a = read_relation(kb, Quality::A);
    a.set_identity();
    a.transitive_closure();
    const BitMatrix at = a.transpose();

    BitMatrix epairs = read_relation(kb, Quality::E);
    epairs |= epairs.transpose();
    BitMatrix e = a * (epairs * at);

    BitMatrix ipairs = read_relation(kb, Quality::I);
    BitMatrix i(n);
    BitMatrix o = read_relation(kb, Quality::O);
    if (!primed) {
        i = ipairs;
        i |= at;
    } else {
        ipairs |= ipairs.transpose();
        ipairs.set_identity();
        i = at * (ipairs * a);
        BitMatrix spread = at * (o * at);
        o = i * e;
        o |= spread;
    }
    out[Quality::A] = std::move(a);
    out[Quality::E] = std::move(e);
    out[Quality::I] = std::move(i);
    out[Quality::O] = std::move(o);
    return out;
}

} // namespace detail

inline ClosureRelations saturate(const KnowledgeBase& kb, const RuleSet& rules) {
    return detail::SemiNaive(kb, rules, false).closure();
}

inline ClosureRelations saturate(const KnowledgeBase& kb, const SystemId& sys) {
    detail::require_direct(sys);
    if (is_d_family(sys)) return detail::closed_form_closure(kb, sys.kind != SystemKind::d);
    return saturate(kb, rules(sys));
}

namespace detail {

// Reachability queries over the A-graph of Γ, used for single-sentence
// decisions without building the whole closure.
class ChainIndex {
public:
    explicit ChainIndex(const KnowledgeBase& kb) : n_(kb.universe_size()), out_(n_), in_(n_) {
        for (const auto& s : kb.sentences()) {
            switch (s.quality) {
            case Quality::A:
                out_[s.subject].push_back(s.predicate);
                in_[s.predicate].push_back(s.subject);
                break;
            case Quality::E:
                epairs_.emplace_back(s.subject, s.predicate);
                epairs_.emplace_back(s.predicate, s.subject);
                break;
            case Quality::I: ipairs_.emplace_back(s.subject, s.predicate); break;
            case Quality::O: opairs_.emplace_back(s.subject, s.predicate); break;
            }
        }
    }

    using Mark = std::vector<char>;

    Mark reach(const std::vector<TermId>& from) const { return bfs(from, out_); }
    Mark reach(TermId from) const { return bfs({from}, out_); }
    Mark coreach(const std::vector<TermId>& from) const { return bfs(from, in_); }
    Mark coreach(TermId from) const { return bfs({from}, in_); }

    std::optional<std::vector<TermId>> chain(TermId a, TermId b) const {
        std::vector<TermId> parent(n_, kNone);
        std::vector<char> seen(n_, 0);
        std::deque<TermId> queue{a};
        seen[a] = 1;
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            if (x == b) {
                std::vector<TermId> path{b};
                while (path.back() != a) path.push_back(parent[path.back()]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            auto next = out_[x];
            std::sort(next.begin(), next.end());
            for (auto y : next)
                if (!seen[y]) {
                    seen[y] = 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
        }
        return std::nullopt;
    }

    bool a(TermId x, TermId y) const { return x == y || reach(x)[y]; }

    bool e(TermId x, TermId y) const {
        auto rx = reach(x), ry = reach(y);
        return std::any_of(epairs_.begin(), epairs_.end(), [&](auto p) { return rx[p.first] && ry[p.second]; });
    }

    bool i_plain(TermId x, TermId y) const {
        if (a(y, x)) return true;
        return std::find(ipairs_.begin(), ipairs_.end(), std::pair{x, y}) != ipairs_.end();
    }

    bool i_primed(TermId x, TermId y) const {
        auto cx = coreach(x), cy = coreach(y);
        for (std::size_t t = 0; t < n_; ++t)
            if (cx[t] && cy[t]) return true;
        return std::any_of(ipairs_.begin(), ipairs_.end(), [&](auto p) {
            return (cx[p.first] && cy[p.second]) || (cx[p.second] && cy[p.first]);
        });
    }

    bool o_plain(TermId x, TermId y) const {
        return std::find(opairs_.begin(), opairs_.end(), std::pair{x, y}) != opairs_.end();
    }

    bool o_primed(TermId x, TermId y) const {
        auto cx = coreach(x), ry = reach(y);
        if (std::any_of(opairs_.begin(), opairs_.end(), [&](auto p) { return cx[p.first] && ry[p.second]; }))
            return true;
        // Terms w with E w y derivable: those reaching the subject side of an
        // E-pair whose other side lies above y.
        std::vector<TermId> heads;
        for (auto [p, q] : epairs_)
            if (ry[q]) heads.push_back(p);
        if (heads.empty()) return false;
        auto e_to_y = coreach(heads);
        // w with I w x derivable: a common lower bound, or an I-pair spread up.
        std::vector<TermId> below_x;
        for (TermId t = 0; t < n_; ++t)
            if (cx[t]) below_x.push_back(t);
        auto via_bound = reach(below_x);
        std::vector<TermId> sources;
        for (auto [p, q] : ipairs_) {
            if (cx[q]) sources.push_back(p);
            if (cx[p]) sources.push_back(q);
        }
        auto via_pair = reach(sources);
        for (std::size_t t = 0; t < n_; ++t)
            if (e_to_y[t] && (via_bound[t] || via_pair[t])) return true;
        return false;
    }

private:
    static constexpr TermId kNone = ~TermId{0};

    Mark bfs(const std::vector<TermId>& from, const std::vector<std::vector<TermId>>& adj) const {
        Mark seen(n_, 0);
        std::vector<TermId> stack;
        for (auto f : from)
            if (!seen[f]) {
                seen[f] = 1;
                stack.push_back(f);
            }
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (auto y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        return seen;
    }

    std::size_t n_;
    std::vector<std::vector<TermId>> out_, in_;
    std::vector<std::pair<TermId, TermId>> epairs_, ipairs_, opairs_;
};

} // namespace detail

inline bool derives(const KnowledgeBase& kb, const Sentence& s, const SystemId& sys) {
    detail::require_direct(sys);
    if (s.subject >= kb.universe_size() || s.predicate >= kb.universe_size())
        throw std::out_of_range("sentence mentions a term outside the universe");
    if (kb.contains(s)) return true;
    if (!is_d_family(sys)) return saturate(kb, sys).contains(s);
    const bool primed = sys.kind != SystemKind::d;
    detail::ChainIndex idx(kb);
    switch (s.quality) {
    case Quality::A: return idx.a(s.subject, s.predicate);
    case Quality::E: return idx.e(s.subject, s.predicate);
    case Quality::I: return primed ? idx.i_primed(s.subject, s.predicate) : idx.i_plain(s.subject, s.predicate);
    case Quality::O: return primed ? idx.o_primed(s.subject, s.predicate) : idx.o_plain(s.subject, s.predicate);
    }
    return false;
}

inline std::optional<std::vector<TermId>> find_chain(const KnowledgeBase& kb, TermId a, TermId b) {
    return detail::ChainIndex(kb).chain(a, b);
}

inline std::optional<Derivation> derivation_of(const KnowledgeBase& kb, const Sentence& s, const SystemId& sys) {
    detail::require_direct(sys);
    detail::SemiNaive engine(kb, rules(sys), true);
    const auto n = kb.universe_size();
    if (!engine.closure().contains(s)) return std::nullopt;
    const auto& prov = engine.provenance();
    Derivation out;
    std::map<std::size_t, std::size_t> line_of;
    // Iterative post-order so premises precede their conclusion.
    std::vector<std::pair<std::size_t, bool>> stack{{sentence_code(s, n), false}};
    while (!stack.empty()) {
        auto [code, ready] = stack.back();
        stack.pop_back();
        if (line_of.count(code)) continue;
        const auto& p = prov[code];
        if (!ready) {
            stack.emplace_back(code, true);
            for (int k = p.count - 1; k >= 0; --k)
                if (!line_of.count(p.premises[k])) stack.emplace_back(p.premises[k], false);
            continue;
        }
        DerivationLine line{sentence_from_code(code, n), Assumption{}};
        if (!p.assumption) {
            RuleApp app{p.rule, {}};
            for (int k = 0; k < p.count; ++k) app.premises.push_back(line_of.at(p.premises[k]));
            line.why = app;
        }
        line_of[code] = out.size();
        out.push_back(std::move(line));
    }
    return out;
}

inline bool check_derivation(const Derivation& deriv, const KnowledgeBase& kb, const RuleSet& allowed) {
    for (std::size_t i = 0; i < deriv.size(); ++i) {
        const auto& line = deriv[i];
        if (line.sentence.subject >= kb.universe_size() || line.sentence.predicate >= kb.universe_size())
            return false;
        if (std::holds_alternative<Assumption>(line.why)) {
            if (!kb.contains(line.sentence)) return false;
            continue;
        }
        const auto& app = std::get<RuleApp>(line.why);
        if (!allowed.contains(app.rule) || is_sequent_rule(app.rule)) return false;
        if (static_cast<int>(app.premises.size()) != arity(app.rule)) return false;
        std::vector<Sentence> premises;
        for (auto p : app.premises) {
            if (p >= i) return false;
            premises.push_back(deriv[p].sentence);
        }
        if (!licenses(app.rule, premises, line.sentence)) return false;
    }
    return true;
}

inline bool check_derivation(const Derivation& deriv, const KnowledgeBase& kb, const SystemId& sys) {
    return check_derivation(deriv, kb, rules(sys));
}

struct Consistency {
    enum class Kind { Consistent, Contradictory, PlainlyContradictory };
    Kind kind = Kind::Consistent;
    std::optional<Sentence> witness;
    std::optional<Sentence> counter;

    bool consistent() const { return kind == Kind::Consistent; }
};

// First (σ, σ̂) pair in the closure with σ universal, scanning A∩O then E∩I
// in term-id order.
inline std::optional<std::pair<Sentence, Sentence>> find_contradiction(const ClosureRelations& c) {
    for (auto q : {Quality::A, Quality::E}) {
        BitMatrix both = c[q] & c[contradictory(q)];
        for (std::size_t x = 0; x < c.size(); ++x) {
            std::optional<std::size_t> hit;
            both.for_each_in_row(x, [&](std::size_t y) {
                if (!hit) hit = y;
            });
            if (hit) {
                Sentence s{q, static_cast<TermId>(x), static_cast<TermId>(*hit)};
                return std::pair{s, contradictory(s)};
            }
        }
    }
    return std::nullopt;
}

inline Consistency is_consistent(const KnowledgeBase& kb, const SystemId& flavor) {
    detail::require_direct(flavor);
    if (is_d_family(flavor)) {
        if (auto w = is_plainly_contradictory(kb))
            return {Consistency::Kind::PlainlyContradictory, *w, contradictory(*w)};
    }
    if (auto pair = find_contradiction(saturate(kb, flavor)))
        return {Consistency::Kind::Contradictory, pair->first, pair->second};
    return {};
}

inline bool consistent(const KnowledgeBase& kb, const SystemId& flavor = systems::d) {
    return is_consistent(kb, flavor).consistent();
}

// Refutational derivability, including the rule-deleted variants.
inline bool g_derives(const KnowledgeBase& kb, const Sentence& s, const SystemId& variant) {
    if (is_direct(variant)) throw std::invalid_argument("g_derives expects a refutational system");
    const auto hat = contradictory(s);
    if (!variant.excluded) return !consistent(kb.with(hat), systems::d);
    const RuleId r = *variant.excluded;
    switch (variant.kind) {
    case SystemKind::g: return !consistent(kb.with(hat), without(systems::d, r));
    case SystemKind::gPrime: {
        if (r == RuleId::Co) return derives(kb, s, systems::dPrime);
        auto sys = without(systems::dPrime, r);
        return saturate(kb, sys).contains(s) || !consistent(kb, sys);
    }
    case SystemKind::gDoublePrime: {
        if (auto base = unprimed(r)) return !consistent(kb.with(hat), without(systems::d, *base));
        if (r == RuleId::Ass) return derives(kb.with_sentences({}), s, systems::d);
        return derives(kb, s, systems::d);
    }
    default: break;
    }
    throw std::invalid_argument("unsupported refutational variant " + system_name(variant));
}

inline bool derives_any(const KnowledgeBase& kb, const Sentence& s, const SystemId& sys) {
    return is_direct(sys) ? derives(kb, s, sys) : g_derives(kb, s, sys);
}

inline std::set<Sentence> closure(const KnowledgeBase& kb, const SystemId& sys) {
    if (is_direct(sys)) return saturate(kb, sys).sentences();
    std::set<Sentence> out;
    if (!sys.excluded && !consistent(kb, systems::d)) {
        for (const auto& s : all_sentences(kb.universe_size())) out.insert(s);
        return out;
    }
    for (const auto& s : all_sentences(kb.universe_size()))
        if (g_derives(kb, s, sys)) out.insert(s);
    return out;
}

class PreconditionViolation : public std::runtime_error {
public:
    PreconditionViolation(const std::string& what, Sentence offending)
        : std::runtime_error(what), offending_(offending) {}
    Sentence offending() const { return offending_; }

private:
    Sentence offending_;
};

// Ecc/Occ over a term that occurs in no two-term sentence of Γ.
inline std::optional<Sentence> isolated_negative_reflexive(const KnowledgeBase& kb) {
    auto essential = essential_terms(kb);
    for (const auto& s : kb.sentences()) {
        if (!is_reflexive(s) || !is_negative(s)) continue;
        if (!std::binary_search(essential.begin(), essential.end(), s.subject)) return s;
    }
    return std::nullopt;
}

inline bool entails(const KnowledgeBase& kb, const Sentence& s, const SystemId& sys) {
    const bool checked = !sys.excluded && (is_d_family(sys) || is_refutational(sys.kind));
    if (checked) {
        if (auto bad = isolated_negative_reflexive(kb))
            throw PreconditionViolation(
                render(*bad, kb) + " is a negative reflexive sentence over a term outside the essential terms", *bad);
    }
    return derives_any(kb, s, sys);
}

// Strongly connected components of the A-graph over the essential terms.
inline std::vector<std::vector<TermId>> equiv_classes(const KnowledgeBase& kb) {
    auto reach = saturate(kb, systems::d)[Quality::A];
    std::vector<std::vector<TermId>> out;
    std::vector<char> placed(kb.universe_size(), 0);
    for (auto t : essential_terms(kb)) {
        if (placed[t]) continue;
        std::vector<TermId> cls;
        for (auto u : essential_terms(kb))
            if (reach.test(t, u) && reach.test(u, t)) {
                cls.push_back(u);
                placed[u] = 1;
            }
        out.push_back(std::move(cls));
    }
    return out;
}

} // namespace syl
