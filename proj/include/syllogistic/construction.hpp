#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "deduction.hpp"
#include "models.hpp"

namespace syl {

class InconsistentKnowledgeBase : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Trial division of odd candidates by every earlier prime. The search for
// p[i+1] is bounded by 1 + p[0]·…·p[i]; the bound saturates at 2^64-1,
// which is never reached in practice.
inline std::vector<std::uint64_t> first_n_primes(std::size_t n) {
    if (n == 0) throw std::invalid_argument("first_n_primes needs n >= 1");
    std::vector<std::uint64_t> p{2};
    if (n == 1) return p;
    p.push_back(3);
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t m = 2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m = m > kMax / p[i] ? kMax : m * p[i];
        const std::uint64_t bound = m == kMax ? kMax : m + 1;
        for (std::uint64_t k = p[i] + 2; k <= bound; k += 2) {
            bool composite = false;
            for (std::size_t j = 0; j <= i; ++j) {
                if (p[j] * p[j] > k) break;
                if (k % p[j] == 0) {
                    composite = true;
                    break;
                }
            }
            if (!composite) {
                p.push_back(k);
                break;
            }
        }
    }
    return p;
}

namespace detail {

inline ClosureRelations consistent_d_closure(const KnowledgeBase& kb) {
    auto c = saturate(kb, systems::d);
    if (find_contradiction(c)) throw InconsistentKnowledgeBase("knowledge base is d-inconsistent");
    return c;
}

} // namespace detail

// μ(c_i) = (Π p_j over A c_i c_j, Π p_j over E c_i c_j) with c_j ranging over
// the essential terms in ascending id order; other terms get (1,1).
inline LeibnizModel assign_leibniz(const KnowledgeBase& kb) {
    const auto closure = detail::consistent_d_closure(kb);
    const auto essential = essential_terms(kb);
    LeibnizModel out;
    out.mu.assign(kb.universe_size(), {Natural{1}, Natural{1}});
    if (essential.empty()) return out;
    const auto primes = first_n_primes(essential.size());
    for (auto ci : essential) {
        Natural m = 1, n = 1;
        for (std::size_t j = 0; j < essential.size(); ++j) {
            if (closure[Quality::A].test(ci, essential[j])) m *= primes[j];
            if (closure[Quality::E].test(ci, essential[j])) n *= primes[j];
        }
        out.mu[ci] = {m, n};
    }
    return out;
}

// Points are ordered pairs ⟨a,b⟩ encoded as a·n + b. Only Range(μ) is
// materialized.
inline VennModel venn_direct(const KnowledgeBase& kb) {
    const auto closure = detail::consistent_d_closure(kb);
    const auto n = kb.universe_size();
    const auto& A = closure[Quality::A];
    const auto& I = closure[Quality::I];
    VennModel out;
    for (TermId c = 0; c < n; ++c) {
        std::vector<std::uint32_t> points;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if ((I.test(a, b) || I.test(b, a)) && (A.test(a, c) || A.test(b, c)))
                    points.push_back(static_cast<std::uint32_t>(a * n + b));
        out.mu.push_back(out.intern(std::move(points)));
    }
    return out;
}

// The direct Venn model of Δ's non-reflexive part with identity moved from A
// to O on μ(C).
inline Structure pd_model(const KnowledgeBase& kb) {
    if (!consistent(kb, systems::pd)) throw InconsistentKnowledgeBase("knowledge base is pd-inconsistent");
    std::vector<Sentence> weak;
    for (const auto& s : kb.sentences())
        if (!is_reflexive(s)) weak.push_back(s);
    const auto gamma = kb.with_sentences(weak);
    return pd_modify(to_structure(venn_direct(gamma)), essential_terms(gamma));
}

} // namespace syl
