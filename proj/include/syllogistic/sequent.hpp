#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "deduction.hpp"

namespace syl {

struct Sequent {
    std::vector<Sentence> context; // sorted, no duplicates
    Sentence conclusion;

    static Sequent make(std::vector<Sentence> context, Sentence conclusion) {
        std::sort(context.begin(), context.end());
        context.erase(std::unique(context.begin(), context.end()), context.end());
        return {std::move(context), conclusion};
    }

    bool has(const Sentence& s) const { return std::binary_search(context.begin(), context.end(), s); }

    friend bool operator==(const Sequent&, const Sequent&) = default;
};

struct SequentLine {
    Sequent sequent;
    RuleId rule;
    std::vector<std::size_t> premises;
    friend bool operator==(const SequentLine&, const SequentLine&) = default;
};

using G2Derivation = std::vector<SequentLine>;

namespace detail {

inline std::vector<Sentence> set_union(const std::vector<Sentence>& a, const std::vector<Sentence>& b) {
    std::vector<Sentence> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline std::vector<Sentence> set_minus(std::vector<Sentence> a, const Sentence& s) {
    a.erase(std::remove(a.begin(), a.end(), s), a.end());
    return a;
}

inline bool check_sequent_line(const G2Derivation& lines, std::size_t i) {
    const auto& line = lines[i];
    if (!is_sequent_rule(line.rule)) return false;
    if (static_cast<int>(line.premises.size()) != arity(line.rule)) return false;
    for (auto p : line.premises)
        if (p >= i) return false;
    const auto& goal = line.sequent;
    switch (line.rule) {
    case RuleId::AIdP: return goal.conclusion.quality == Quality::A && is_reflexive(goal.conclusion);
    case RuleId::Ass: return goal.has(goal.conclusion);
    case RuleId::ApcP:
    case RuleId::EcP: {
        const auto& prem = lines[line.premises[0]].sequent;
        std::array<Sentence, 1> ps{prem.conclusion};
        return prem.context == goal.context && licenses(*unprimed(line.rule), ps, goal.conclusion);
    }
    case RuleId::BarbaraP:
    case RuleId::CelarentP: {
        const auto& p0 = lines[line.premises[0]].sequent;
        const auto& p1 = lines[line.premises[1]].sequent;
        std::array<Sentence, 2> ps{p0.conclusion, p1.conclusion};
        return goal.context == set_union(p0.context, p1.context) &&
               licenses(*unprimed(line.rule), ps, goal.conclusion);
    }
    case RuleId::Raa: {
        const auto& p0 = lines[line.premises[0]].sequent;
        const auto& p1 = lines[line.premises[1]].sequent;
        if (p1.conclusion != contradictory(p0.conclusion)) return false;
        const auto hat = contradictory(goal.conclusion);
        if (!p0.has(hat) || !p1.has(hat)) return false;
        auto all = set_union(p0.context, p1.context);
        return set_minus(goal.context, hat) == set_minus(all, hat);
    }
    default: return false;
    }
}

// Lifts a d-derivation from Δ into sequents with context Δ.
inline void append_lifted(G2Derivation& out, const Derivation& deriv, const std::vector<Sentence>& context) {
    const auto offset = out.size();
    for (const auto& line : deriv) {
        SequentLine sl{Sequent::make(context, line.sentence), RuleId::Ass, {}};
        if (const auto* app = std::get_if<RuleApp>(&line.why)) {
            sl.rule = *primed(app->rule);
            for (auto p : app->premises) sl.premises.push_back(p + offset);
        }
        out.push_back(std::move(sl));
    }
}

} // namespace detail

inline bool check_g2_derivation(const G2Derivation& lines, const Sequent& target) {
    if (lines.empty() || lines.back().sequent != target) return false;
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (!detail::check_sequent_line(lines, i)) return false;
    return true;
}

// Uses no Raa when Γ ⊢d σ; otherwise refutes Γ ∪ {σ̂} and closes with a
// single Raa.
inline std::optional<G2Derivation> emit_g2_derivation(const KnowledgeBase& kb, const Sentence& s) {
    const auto& gamma = kb.sentences();
    G2Derivation out;
    if (auto direct = derivation_of(kb, s, systems::d)) {
        detail::append_lifted(out, *direct, gamma);
        return out;
    }
    const auto hat = contradictory(s);
    const auto extended = kb.with(hat);
    auto verdict = is_consistent(extended, systems::d);
    if (verdict.consistent()) return std::nullopt;
    const auto rho = *verdict.witness;
    const auto rho_hat = *verdict.counter;
    auto left = derivation_of(extended, rho, systems::d);
    auto right = derivation_of(extended, rho_hat, systems::d);
    if (!left || !right) return std::nullopt;
    detail::append_lifted(out, *left, extended.sentences());
    const auto left_end = out.size() - 1;
    detail::append_lifted(out, *right, extended.sentences());
    const auto right_end = out.size() - 1;
    out.push_back({Sequent::make(gamma, s), RuleId::Raa, {left_end, right_end}});
    return out;
}

} // namespace syl
