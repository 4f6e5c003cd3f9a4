#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deduction.hpp"
#include "sorites.hpp"

namespace syl {

// A row of the report: a base system, optionally restricted to sorites
// deductions (d''s).
struct IndependenceSystem {
    SystemId base;
    bool sorites = false;

    friend bool operator==(const IndependenceSystem&, const IndependenceSystem&) = default;
};

inline std::string independence_system_name(const IndependenceSystem& s) {
    return system_name(s.base) + (s.sorites ? "s" : "");
}

inline std::vector<IndependenceSystem> independence_systems() {
    return {{systems::d},           {systems::dPrime}, {systems::dDoublePrime}, {systems::dDoublePrime, true},
            {systems::g},           {systems::gPrime}, {systems::gDoublePrime}};
}

struct RuleInstance {
    KnowledgeBase kb; // the premises over terms a, b, c
    Sentence conclusion;
};

inline ClosureRelations closure_without(const KnowledgeBase& kb, const SystemId& sys, RuleId r) {
    detail::require_direct(sys);
    return saturate(kb, without(sys, r));
}

namespace detail {

inline KnowledgeBase instance_universe(std::size_t vars) {
    KnowledgeBase kb;
    for (std::size_t i = 0; i < vars; ++i) kb.add_term(std::string(1, static_cast<char>('a' + i)));
    return kb;
}

// Premise patterns over variables 0, 1, 2; the conclusion comes from the rule
// itself.
inline std::vector<Sentence> premise_pattern(RuleId r) {
    using Q = Quality;
    switch (r) {
    case RuleId::AId: return {};
    case RuleId::Apc: return {{Q::A, 0, 1}};
    case RuleId::Ec: return {{Q::E, 0, 1}};
    case RuleId::Ic: return {{Q::I, 0, 1}};
    case RuleId::ESub: return {{Q::E, 0, 1}};
    case RuleId::Barbara: return {{Q::A, 0, 1}, {Q::A, 1, 2}};
    case RuleId::Celarent: return {{Q::A, 0, 1}, {Q::E, 1, 2}};
    case RuleId::Darii: return {{Q::I, 0, 1}, {Q::A, 1, 2}};
    case RuleId::Ferio: return {{Q::I, 0, 1}, {Q::E, 1, 2}};
    case RuleId::Baroco: return {{Q::O, 0, 1}, {Q::A, 2, 1}};
    case RuleId::Bocardo: return {{Q::A, 1, 0}, {Q::O, 1, 2}};
    case RuleId::Ferison: return {{Q::I, 1, 0}, {Q::E, 1, 2}};
    default: throw std::invalid_argument("no premise pattern for " + std::string(rule_name(r)));
    }
}

inline std::size_t pattern_vars(RuleId r) {
    if (r == RuleId::AId) return 1;
    if (arity(r) == 1) return 2;
    return 3;
}

inline RuleInstance make_instance(std::size_t universe, const std::vector<Sentence>& premises, Sentence conclusion) {
    auto kb = instance_universe(universe);
    for (const auto& p : premises) kb.add(p);
    return {std::move(kb), conclusion};
}

// Every instance of a direct rule over its variables, the one with pairwise
// distinct terms first.
inline std::vector<RuleInstance> direct_instances(RuleId r) {
    const auto v = pattern_vars(r);
    const auto pattern = premise_pattern(r);
    std::vector<RuleInstance> out;
    std::vector<TermId> assign(v, 0);
    auto emit = [&] {
        std::vector<Sentence> premises;
        for (const auto& p : pattern) premises.push_back({p.quality, assign[p.subject], assign[p.predicate]});
        auto c = apply_rule(r, premises, assign[0]);
        if (c) out.push_back(make_instance(v, premises, *c));
    };
    for (std::size_t i = 0; i < v; ++i) assign[i] = static_cast<TermId>(i);
    emit();
    std::size_t total = 1;
    for (std::size_t i = 0; i < v; ++i) total *= v;
    for (std::size_t code = 0; code < total; ++code) {
        auto rest = code;
        bool identity = true;
        for (std::size_t i = 0; i < v; ++i) {
            assign[i] = static_cast<TermId>(rest % v);
            rest /= v;
            identity = identity && assign[i] == i;
        }
        if (!identity) emit();
    }
    return out;
}

inline std::vector<RuleInstance> rule_instances(RuleId r) {
    using Q = Quality;
    switch (r) {
    case RuleId::Co: {
        // ρ = Aab, ρ̂ = Oab; any conclusion, Eab first.
        std::vector<RuleInstance> out;
        std::vector<Sentence> premises{{Q::A, 0, 1}, {Q::O, 0, 1}};
        out.push_back(make_instance(2, premises, {Q::E, 0, 1}));
        for (const auto& s : all_sentences(2))
            if (s != Sentence{Q::E, 0, 1}) out.push_back(make_instance(2, premises, s));
        return out;
    }
    case RuleId::Ass: return {make_instance(2, {{Q::O, 0, 1}}, {Q::O, 0, 1})};
    case RuleId::Raa: return {make_instance(2, {{Q::I, 1, 0}}, {Q::I, 0, 1})};
    default: break;
    }
    if (auto base = unprimed(r)) return direct_instances(*base);
    return direct_instances(r);
}

inline bool sorites_derives(const KnowledgeBase& kb, const Sentence& s, const RuleSet& rs) {
    return find_sorites_exhaustive(kb, s, rs).has_value();
}

inline bool derives_in(const IndependenceSystem& sys, const KnowledgeBase& kb, const Sentence& s,
                       std::optional<RuleId> excluded) {
    const SystemId e = excluded ? without(sys.base, *excluded) : sys.base;
    if (sys.sorites) return sorites_derives(kb, s, rules(e));
    return derives_any(kb, s, e);
}

} // namespace detail

struct RuleStatus {
    IndependenceSystem system;
    RuleId rule;
    bool derivable = false;
    bool weakly_independent = false;
    // First instance not derivable without the rule, or the Δ ⊢ ρ witness
    // of weak independence for a derivable rule.
    std::optional<RuleInstance> witness;
    // A deduction of the first instance without the rule, when derivable.
    std::optional<Derivation> derivation;

    std::string status() const {
        if (!derivable) return "independent";
        return weakly_independent ? "weaklyIndependent" : "derivable";
    }
};

namespace detail {

// Known weak-independence witnesses for rules derivable in d''s.
inline std::optional<RuleInstance> sorites_weak_witness(RuleId r) {
    using Q = Quality;
    switch (r) {
    case RuleId::ESub: return make_instance(2, {{Q::E, 0, 1}}, {Q::O, 1, 0});
    case RuleId::Ferio: return make_instance(3, {{Q::E, 0, 1}, {Q::I, 2, 1}}, {Q::O, 2, 0});
    case RuleId::Ferison: return make_instance(3, {{Q::E, 0, 1}, {Q::I, 1, 2}}, {Q::O, 2, 0});
    default: return std::nullopt;
    }
}

} // namespace detail

inline RuleStatus check_rule_status(const IndependenceSystem& sys, RuleId r) {
    if (!base_rules(sys.base.kind).contains(r))
        throw std::invalid_argument(std::string(rule_name(r)) + " is not a rule of " + independence_system_name(sys));
    if (sys.sorites && sys.base.kind != SystemKind::dDoublePrime)
        throw std::invalid_argument("sorites rows are only defined for d''");
    RuleStatus out;
    out.system = sys;
    out.rule = r;
    const auto instances = detail::rule_instances(r);
    out.derivable = true;
    for (const auto& inst : instances) {
        if (!detail::derives_in(sys, inst.kb, inst.conclusion, r)) {
            out.derivable = false;
            out.witness = inst;
            break;
        }
    }
    if (!out.derivable) {
        out.weakly_independent = detail::derives_in(sys, out.witness->kb, out.witness->conclusion, std::nullopt);
        return out;
    }
    const auto& first = instances.front();
    if (is_direct(sys.base)) {
        const auto rs = rules(without(sys.base, r));
        out.derivation = find_sorites_exhaustive(first.kb, first.conclusion, rs);
        if (!out.derivation) out.derivation = derivation_of(first.kb, first.conclusion, without(sys.base, r));
    }
    // Outside sorites rows a rule derivable from the others adds no
    // consequences, so only d''s can be weakly independent here.
    if (sys.sorites) {
        if (auto w = detail::sorites_weak_witness(r)) {
            if (detail::derives_in(sys, w->kb, w->conclusion, std::nullopt) &&
                !detail::derives_in(sys, w->kb, w->conclusion, r)) {
                out.weakly_independent = true;
                out.witness = std::move(w);
            }
        }
    }
    return out;
}

struct IndependenceReport {
    std::vector<RuleStatus> cells;

    const RuleStatus* find(const IndependenceSystem& sys, RuleId r) const {
        for (const auto& c : cells)
            if (c.system == sys && c.rule == r) return &c;
        return nullptr;
    }

    bool system_independent(const IndependenceSystem& sys) const {
        for (const auto& c : cells)
            if (c.system == sys && c.derivable) return false;
        return true;
    }

    bool system_weakly_independent(const IndependenceSystem& sys) const {
        for (const auto& c : cells)
            if (c.system == sys && !c.weakly_independent) return false;
        return true;
    }
};

inline IndependenceReport full_report() {
    IndependenceReport out;
    for (const auto& sys : independence_systems())
        for (auto r : base_rules(sys.base.kind).list()) out.cells.push_back(check_rule_status(sys, r));
    return out;
}

} // namespace syl
