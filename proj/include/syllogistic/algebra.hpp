#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bitmatrix.hpp"
#include "core.hpp"
#include "models.hpp"

namespace syl {

// A partial binary operation on {0, …, size-1}.
class PartialAlgebra {
public:
    PartialAlgebra() = default;
    explicit PartialAlgebra(std::size_t size) : size_(size), table_(size * size, kUndefined) {}

    std::size_t size() const { return size_; }

    std::optional<std::size_t> op(std::size_t x, std::size_t y) const {
        auto v = table_.at(x * size_ + y);
        if (v == kUndefined) return std::nullopt;
        return v;
    }

    bool defined(std::size_t x, std::size_t y) const { return table_.at(x * size_ + y) != kUndefined; }

    void define(std::size_t x, std::size_t y, std::size_t z) {
        if (z >= size_) throw std::out_of_range("operation value outside the base");
        table_.at(x * size_ + y) = static_cast<std::uint32_t>(z);
    }

    void undefine(std::size_t x, std::size_t y) { table_.at(x * size_ + y) = kUndefined; }

    bool total() const {
        for (auto v : table_)
            if (v == kUndefined) return false;
        return true;
    }

    friend bool operator==(const PartialAlgebra&, const PartialAlgebra&) = default;

private:
    static constexpr std::uint32_t kUndefined = ~std::uint32_t{0};
    std::size_t size_ = 0;
    std::vector<std::uint32_t> table_;
};

struct AlgebraClassFlags {
    bool idempotent = false;
    bool right_associative = false;
    bool weakly_right_associative = false;
    bool commutative = false;

    bool la() const { return right_associative && idempotent; }
    bool cla() const { return la() && commutative; }
    bool wla() const { return weakly_right_associative && idempotent; }
    bool cwla() const { return wla() && commutative; }
};

// a + b = a exactly when a ≤° b.
inline PartialAlgebra induced_operation(const BitMatrix& order) {
    PartialAlgebra out(order.size());
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = 0; b < order.size(); ++b)
            if (order.test(a, b)) out.define(a, b, a);
    return out;
}

inline BitMatrix induced_order(const PartialAlgebra& pa) {
    BitMatrix out(pa.size());
    for (std::size_t a = 0; a < pa.size(); ++a)
        for (std::size_t b = 0; b < pa.size(); ++b)
            if (pa.op(a, b) == a) out.set(a, b);
    return out;
}

inline AlgebraClassFlags classify(const PartialAlgebra& pa) {
    const auto n = pa.size();
    AlgebraClassFlags f{true, true, true, true};
    for (std::size_t a = 0; a < n; ++a)
        if (pa.op(a, a) != a) f.idempotent = false;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            auto ab = pa.op(a, b);
            auto ba = pa.op(b, a);
            if (ab && ba && *ab != *ba) f.commutative = false;
            for (std::size_t c = 0; c < n; ++c) {
                auto bc = pa.op(b, c);
                auto rhs = bc ? pa.op(a, *bc) : std::nullopt;
                if (!rhs) continue;
                auto lhs = ab ? pa.op(*ab, c) : std::nullopt;
                // Right associativity: rhs exists ⇒ lhs exists and is equal.
                if (lhs != rhs) f.right_associative = false;
                // Weak version: only when a ⊕ b exists as well.
                if (ab && lhs != rhs) f.weakly_right_associative = false;
            }
        }
    return f;
}

namespace detail {

inline bool solves_both(const PartialAlgebra& pa, std::size_t x, std::size_t u, std::size_t v) {
    return pa.op(x, u) == x && pa.op(x, v) == x;
}

inline bool wls_holds(const PartialAlgebra& pa, const std::vector<std::size_t>& mu, const Sentence& s,
                      std::optional<std::size_t> zero) {
    const auto u = mu.at(s.subject), v = mu.at(s.predicate);
    bool affirmative = false;
    switch (s.quality) {
    case Quality::A:
    case Quality::O: affirmative = pa.op(u, v) == u; break;
    case Quality::I:
    case Quality::E:
        for (std::size_t x = 0; x < pa.size() && !affirmative; ++x)
            affirmative = x != zero && solves_both(pa, x, u, v);
        break;
    }
    return is_affirmative(s) ? affirmative : !affirmative;
}

} // namespace detail

// Satisfaction in the weak Leibniz structure ⟨B, ⊕, μ⟩.
inline bool satisfies_wls(const PartialAlgebra& pa, const std::vector<std::size_t>& mu, const Sentence& s) {
    if (!classify(pa).wla()) throw std::invalid_argument("satisfies_wls needs a weak Leibniz algebra");
    return detail::wls_holds(pa, mu, s, std::nullopt);
}

class WeakLeibnizStructure {
public:
    WeakLeibnizStructure(PartialAlgebra algebra, std::vector<std::size_t> mu)
        : algebra_(std::move(algebra)), mu_(std::move(mu)) {
        if (!classify(algebra_).wla()) throw std::invalid_argument("base is not a weak Leibniz algebra");
    }

    std::size_t term_count() const { return mu_.size(); }
    bool satisfies(const Sentence& s) const { return detail::wls_holds(algebra_, mu_, s, std::nullopt); }

private:
    PartialAlgebra algebra_;
    std::vector<std::size_t> mu_;
};

struct AnnihilatorAlgebra {
    PartialAlgebra algebra;
    std::size_t zero = 0;

    std::size_t size() const { return algebra.size(); }

    bool zero_is_annihilator() const {
        for (std::size_t x = 0; x < size(); ++x)
            if (algebra.op(x, zero) != zero || algebra.op(zero, x) != zero) return false;
        return true;
    }

    // Elements other than zero, in order; subreduct index i is element
    // nonzero()[i].
    std::vector<std::size_t> nonzero() const {
        std::vector<std::size_t> out;
        for (std::size_t x = 0; x < size(); ++x)
            if (x != zero) out.push_back(x);
        return out;
    }

    PartialAlgebra subreduct() const {
        const auto keep = nonzero();
        std::vector<std::size_t> index(size(), 0);
        for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = i;
        PartialAlgebra out(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                if (auto v = algebra.op(keep[i], keep[j]); v && *v != zero) out.define(i, j, index[*v]);
        return out;
    }
};

// x ₀* y = x * y where defined, the fresh zero otherwise.
inline AnnihilatorAlgebra adjoin_annihilator(const PartialAlgebra& pa) {
    const auto n = pa.size();
    AnnihilatorAlgebra out{PartialAlgebra(n + 1), n};
    for (std::size_t x = 0; x <= n; ++x)
        for (std::size_t y = 0; y <= n; ++y) {
            std::optional<std::size_t> v;
            if (x < n && y < n) v = pa.op(x, y);
            out.algebra.define(x, y, v ? *v : n);
        }
    return out;
}

// Total, with annihilator, and the reduct a commutative Leibniz algebra.
inline bool is_tclaa(const AnnihilatorAlgebra& aa) {
    return aa.algebra.total() && aa.zero_is_annihilator() && classify(aa.algebra).cla();
}

namespace detail {

inline void require_awls(const AnnihilatorAlgebra& aa, const std::vector<std::size_t>& mu) {
    if (!aa.zero_is_annihilator()) throw std::invalid_argument("zero is not an annihilator");
    if (!classify(aa.subreduct()).wla()) throw std::invalid_argument("subreduct is not a weak Leibniz algebra");
    for (auto m : mu)
        if (m == aa.zero) throw std::invalid_argument("μ must avoid the annihilator");
}

} // namespace detail

// Satisfaction in ⟨B, *, 0, μ⟩ where neither μ nor solutions may be 0.
inline bool satisfies_awls(const AnnihilatorAlgebra& aa, const std::vector<std::size_t>& mu, const Sentence& s) {
    detail::require_awls(aa, mu);
    return detail::wls_holds(aa.algebra, mu, s, aa.zero);
}

// The TCLSA reading: Iab iff μa * μb ≠ 0.
inline bool satisfies_tclsa(const AnnihilatorAlgebra& aa, const std::vector<std::size_t>& mu, const Sentence& s) {
    if (!is_tclaa(aa)) throw std::invalid_argument("satisfies_tclsa needs a total commutative Leibniz algebra with annihilator");
    const auto u = mu.at(s.subject), v = mu.at(s.predicate);
    if (u == aa.zero || v == aa.zero) throw std::invalid_argument("μ must avoid the annihilator");
    switch (s.quality) {
    case Quality::A: return aa.algebra.op(u, v) == u;
    case Quality::O: return aa.algebra.op(u, v) != u;
    case Quality::I: return aa.algebra.op(u, v) != aa.zero;
    case Quality::E: return aa.algebra.op(u, v) == aa.zero;
    }
    return false;
}

class AnnihilatorStructure {
public:
    AnnihilatorStructure(AnnihilatorAlgebra algebra, std::vector<std::size_t> mu)
        : algebra_(std::move(algebra)), mu_(std::move(mu)) {
        detail::require_awls(algebra_, mu_);
    }

    const AnnihilatorAlgebra& algebra() const { return algebra_; }
    const std::vector<std::size_t>& mu() const { return mu_; }
    std::size_t term_count() const { return mu_.size(); }
    bool satisfies(const Sentence& s) const { return detail::wls_holds(algebra_.algebra, mu_, s, algebra_.zero); }

private:
    AnnihilatorAlgebra algebra_;
    std::vector<std::size_t> mu_;
};

// f(b) = {x : x * b = x} − {0}, each set sorted.
inline std::vector<std::vector<std::uint32_t>> embed_blaa(const AnnihilatorAlgebra& aa) {
    if (!is_tclaa(aa)) throw std::invalid_argument("embed_blaa needs a total commutative Leibniz algebra with annihilator");
    std::vector<std::vector<std::uint32_t>> f(aa.size());
    for (std::size_t b = 0; b < aa.size(); ++b)
        for (std::size_t x = 0; x < aa.size(); ++x)
            if (x != aa.zero && aa.algebra.op(x, b) == x) f[b].push_back(static_cast<std::uint32_t>(x));
    return f;
}

// The Venn model ⟨℘(B) − {∅}, f∘μ⟩.
inline VennModel venn_from_tclsa(const AnnihilatorAlgebra& aa, const std::vector<std::size_t>& mu) {
    const auto f = embed_blaa(aa);
    VennModel out;
    for (auto m : mu) {
        if (m == aa.zero) throw std::invalid_argument("μ must avoid the annihilator");
        out.mu.push_back(out.intern(f[m]));
    }
    return out;
}

inline constexpr std::size_t kMaxBlsaPoints = 10;

// ⟨℘(∪B), ∩, ∅, μ⟩ with subsets encoded as bitmasks over the sorted points.
inline AnnihilatorStructure blsa_from_venn(const VennModel& venn) {
    std::vector<std::uint32_t> points;
    for (const auto& s : venn.sets) points.insert(points.end(), s.begin(), s.end());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() > kMaxBlsaPoints) throw std::invalid_argument("Venn model has too many points for a power set");
    const std::size_t size = std::size_t{1} << points.size();
    AnnihilatorAlgebra alg{PartialAlgebra(size), 0};
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) alg.algebra.define(x, y, x & y);
    std::vector<std::size_t> mu;
    for (auto m : venn.mu) {
        std::size_t mask = 0;
        for (auto p : venn.sets.at(m))
            mask |= std::size_t{1} << (std::lower_bound(points.begin(), points.end(), p) - points.begin());
        mu.push_back(mask);
    }
    return AnnihilatorStructure(std::move(alg), std::move(mu));
}

} // namespace syl
