#pragma once

#include <algorithm>
#include <array>
#include <concepts>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bitmatrix.hpp"
#include "core.hpp"
#include "rules.hpp"

namespace syl {

using Natural = boost::multiprecision::cpp_int;

template <class M>
concept Model = requires(const M& m, const Sentence& s) {
    { m.satisfies(s) } -> std::convertible_to<bool>;
    { m.term_count() } -> std::convertible_to<std::size_t>;
};

inline std::vector<std::string> numbered_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

// ⟨B, A*, E*, I*, O*, μ⟩ over a finite base.
struct Structure {
    std::vector<std::string> labels;
    std::array<BitMatrix, 4> rel;
    std::vector<std::size_t> mu;

    static Structure blank(std::size_t base, std::size_t terms) {
        Structure s;
        s.labels = numbered_labels(base);
        for (auto& r : s.rel) r = BitMatrix(base);
        s.mu.assign(terms, 0);
        return s;
    }

    std::size_t base_size() const { return labels.size(); }
    std::size_t term_count() const { return mu.size(); }
    const BitMatrix& operator[](Quality q) const { return rel[static_cast<std::size_t>(q)]; }
    BitMatrix& operator[](Quality q) { return rel[static_cast<std::size_t>(q)]; }

    bool satisfies(const Sentence& s) const { return (*this)[s.quality].test(mu.at(s.subject), mu.at(s.predicate)); }

    std::vector<std::size_t> range() const {
        std::vector<std::size_t> out(mu.begin(), mu.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const Structure&, const Structure&) = default;
};

// Preorder model; I holds when the pair has an r1-lower bound.
struct OrderModel {
    std::vector<std::string> labels;
    BitMatrix r1;
    std::vector<std::size_t> mu;

    std::size_t base_size() const { return labels.size(); }
    std::size_t term_count() const { return mu.size(); }

    bool lower_bound(std::size_t x, std::size_t y) const {
        for (std::size_t z = 0; z < base_size(); ++z)
            if (r1.test(z, x) && r1.test(z, y)) return true;
        return false;
    }

    BitMatrix r2() const {
        BitMatrix out(base_size());
        for (std::size_t x = 0; x < base_size(); ++x)
            for (std::size_t y = 0; y < base_size(); ++y)
                if (lower_bound(x, y)) out.set(x, y);
        return out;
    }

    bool satisfies(const Sentence& s) const {
        auto x = mu.at(s.subject), y = mu.at(s.predicate);
        switch (s.quality) {
        case Quality::A: return r1.test(x, y);
        case Quality::E: return !lower_bound(x, y);
        case Quality::I: return lower_bound(x, y);
        case Quality::O: return !r1.test(x, y);
        }
        return false;
    }
};

// DF(C)-style model: A by r1, I by r2, E and O by their complements.
struct DFModel {
    std::vector<std::string> labels;
    BitMatrix r1;
    BitMatrix r2;
    std::vector<std::size_t> mu;

    std::size_t base_size() const { return labels.size(); }
    std::size_t term_count() const { return mu.size(); }

    bool satisfies(const Sentence& s) const {
        auto x = mu.at(s.subject), y = mu.at(s.predicate);
        switch (s.quality) {
        case Quality::A: return r1.test(x, y);
        case Quality::E: return !r2.test(x, y);
        case Quality::I: return r2.test(x, y);
        case Quality::O: return !r1.test(x, y);
        }
        return false;
    }
};

inline DFModel to_df(const OrderModel& m) { return {m.labels, m.r1, m.r2(), m.mu}; }

// Non-empty point sets; mu indexes into sets.
struct VennModel {
    std::vector<std::vector<std::uint32_t>> sets;
    std::vector<std::size_t> mu;

    std::size_t term_count() const { return mu.size(); }

    static bool subset(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    }

    static bool meets(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        auto i = a.begin();
        auto j = b.begin();
        while (i != a.end() && j != b.end()) {
            if (*i == *j) return true;
            if (*i < *j) ++i;
            else ++j;
        }
        return false;
    }

    bool satisfies(const Sentence& s) const {
        const auto& x = sets.at(mu.at(s.subject));
        const auto& y = sets.at(mu.at(s.predicate));
        switch (s.quality) {
        case Quality::A: return subset(x, y);
        case Quality::E: return !meets(x, y);
        case Quality::I: return meets(x, y);
        case Quality::O: return !subset(x, y);
        }
        return false;
    }

    // Adds a set (normalized) unless present; returns its index.
    std::size_t intern(std::vector<std::uint32_t> set) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty()) throw std::invalid_argument("Venn model members must be non-empty");
        auto it = std::find(sets.begin(), sets.end(), set);
        if (it != sets.end()) return static_cast<std::size_t>(it - sets.begin());
        sets.push_back(std::move(set));
        return sets.size() - 1;
    }
};

inline bool multiple_of(const Natural& m, const Natural& n) {
    if (n == 0) return m == 0;
    return m % n == 0;
}

// Terms denote pairs (m, n); A by componentwise divisibility, I by
// cross-coprimality.
struct LeibnizModel {
    std::vector<std::pair<Natural, Natural>> mu;

    std::size_t term_count() const { return mu.size(); }

    static bool includes(const std::pair<Natural, Natural>& x, const std::pair<Natural, Natural>& y) {
        return multiple_of(x.first, y.first) && multiple_of(x.second, y.second);
    }

    static bool overlaps(const std::pair<Natural, Natural>& x, const std::pair<Natural, Natural>& y) {
        return gcd(x.first, y.second) == 1 && gcd(x.second, y.first) == 1;
    }

    bool satisfies(const Sentence& s) const {
        const auto& x = mu.at(s.subject);
        const auto& y = mu.at(s.predicate);
        switch (s.quality) {
        case Quality::A: return includes(x, y);
        case Quality::E: return !overlaps(x, y);
        case Quality::I: return overlaps(x, y);
        case Quality::O: return !includes(x, y);
        }
        return false;
    }

    bool coprime_pairs() const {
        return std::all_of(mu.begin(), mu.end(), [](const auto& p) { return gcd(p.first, p.second) == 1; });
    }
};

template <Model M>
std::set<Sentence> basic_theory(const M& m) {
    std::set<Sentence> out;
    for (const auto& s : all_sentences(m.term_count()))
        if (m.satisfies(s)) out.insert(s);
    return out;
}

inline std::set<Sentence> restrict_theory(const std::set<Sentence>& theory, std::initializer_list<Quality> qs) {
    std::set<Sentence> out;
    for (const auto& s : theory)
        if (std::find(qs.begin(), qs.end(), s.quality) != qs.end()) out.insert(s);
    return out;
}

inline std::set<Sentence> positive_theory(const std::set<Sentence>& t) { return restrict_theory(t, {Quality::A, Quality::I}); }
inline std::set<Sentence> negative_theory(const std::set<Sentence>& t) { return restrict_theory(t, {Quality::E, Quality::O}); }

template <Model M1, Model M2>
bool basically_equivalent(const M1& a, const M2& b) {
    return a.term_count() == b.term_count() && basic_theory(a) == basic_theory(b);
}

inline Structure canonical_structure(const std::vector<std::string>& labels, const std::set<Sentence>& delta) {
    Structure s = Structure::blank(labels.size(), labels.size());
    s.labels = labels;
    for (std::size_t i = 0; i < labels.size(); ++i) s.mu[i] = i;
    for (const auto& x : delta) s[x.quality].set(x.subject, x.predicate);
    return s;
}

inline Structure canonical_structure(const KnowledgeBase& kb, const std::set<Sentence>& delta) {
    return canonical_structure(kb.symbols().names(), delta);
}

inline Structure canonical_structure(const KnowledgeBase& kb) {
    return canonical_structure(kb, std::set<Sentence>(kb.sentences().begin(), kb.sentences().end()));
}

inline Structure to_structure(const DFModel& m) {
    Structure s = Structure::blank(m.base_size(), m.term_count());
    s.labels = m.labels;
    s.mu = m.mu;
    for (std::size_t x = 0; x < m.base_size(); ++x)
        for (std::size_t y = 0; y < m.base_size(); ++y) {
            s[Quality::A].assign(x, y, m.r1.test(x, y));
            s[Quality::O].assign(x, y, !m.r1.test(x, y));
            s[Quality::I].assign(x, y, m.r2.test(x, y));
            s[Quality::E].assign(x, y, !m.r2.test(x, y));
        }
    return s;
}

inline Structure to_structure(const OrderModel& m) { return to_structure(to_df(m)); }

inline Structure to_structure(const VennModel& v) {
    const auto k = v.sets.size();
    Structure s = Structure::blank(k, v.term_count());
    s.mu = v.mu;
    for (std::size_t i = 0; i < k; ++i) {
        std::string label = "{";
        for (std::size_t j = 0; j < v.sets[i].size(); ++j) label += (j ? "," : "") + std::to_string(v.sets[i][j]);
        s.labels[i] = label + "}";
    }
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) {
            bool sub = VennModel::subset(v.sets[x], v.sets[y]);
            bool meet = VennModel::meets(v.sets[x], v.sets[y]);
            s[Quality::A].assign(x, y, sub);
            s[Quality::O].assign(x, y, !sub);
            s[Quality::I].assign(x, y, meet);
            s[Quality::E].assign(x, y, !meet);
        }
    return s;
}

namespace detail {

// Calls f(x, y) over range², stopping at the first false.
template <class F>
bool all_pairs(const std::vector<std::size_t>& r, F&& f) {
    for (auto x : r)
        for (auto y : r)
            if (!f(x, y)) return false;
    return true;
}

template <class F>
bool all_triples(const std::vector<std::size_t>& r, F&& f) {
    for (auto x : r)
        for (auto y : r)
            for (auto z : r)
                if (!f(x, y, z)) return false;
    return true;
}

} // namespace detail

// Preorder A, A ⊆ converse I, symmetric E, A|E ⊆ E, all on μ(C).
inline bool is_d_model(const Structure& m) {
    const auto r = m.range();
    const auto& A = m[Quality::A];
    const auto& E = m[Quality::E];
    const auto& I = m[Quality::I];
    for (auto x : r)
        if (!A.test(x, x)) return false;
    return detail::all_pairs(r, [&](auto x, auto y) {
               return (!A.test(x, y) || I.test(y, x)) && (!E.test(x, y) || E.test(y, x));
           }) &&
           detail::all_triples(r, [&](auto x, auto y, auto z) {
               if (!A.test(x, y)) return true;
               return (!A.test(y, z) || A.test(x, z)) && (!E.test(y, z) || E.test(x, z));
           });
}

inline bool is_dprime_model(const Structure& m) {
    if (!is_d_model(m)) return false;
    const auto r = m.range();
    const auto& A = m[Quality::A];
    const auto& E = m[Quality::E];
    const auto& I = m[Quality::I];
    const auto& O = m[Quality::O];
    return detail::all_pairs(r, [&](auto x, auto y) { return !I.test(x, y) || I.test(y, x); }) &&
           detail::all_triples(r, [&](auto x, auto y, auto z) {
               if (I.test(x, y) && A.test(y, z) && !I.test(x, z)) return false;
               if (I.test(x, y) && E.test(y, z) && !O.test(x, z)) return false;
               if (O.test(x, y) && A.test(z, y) && !O.test(x, z)) return false;
               if (A.test(y, x) && O.test(y, z) && !O.test(x, z)) return false;
               return true;
           });
}

// A∩O and E∩I empty on μ(C).
inline bool is_consistent_structure(const Structure& m) {
    return detail::all_pairs(m.range(), [&](auto x, auto y) {
        return !(m[Quality::A].test(x, y) && m[Quality::O].test(x, y)) &&
               !(m[Quality::E].test(x, y) && m[Quality::I].test(x, y));
    });
}

inline bool is_complete_structure(const Structure& m) {
    return detail::all_pairs(m.range(), [&](auto x, auto y) {
        return (m[Quality::A].test(x, y) || m[Quality::O].test(x, y)) &&
               (m[Quality::E].test(x, y) || m[Quality::I].test(x, y));
    });
}

inline bool is_full_structure(const Structure& m) {
    return detail::all_pairs(m.range(), [&](auto x, auto y) {
        return std::all_of(m.rel.begin(), m.rel.end(), [&](const BitMatrix& b) { return b.test(x, y); });
    });
}

inline bool is_g_model(const Structure& m) {
    return is_dprime_model(m) && (is_consistent_structure(m) || is_full_structure(m));
}

inline bool is_model_of_kind(const Structure& m, SystemKind e) {
    switch (e) {
    case SystemKind::d: return is_d_model(m);
    case SystemKind::dPrime: return is_dprime_model(m);
    case SystemKind::g: return is_g_model(m);
    default: throw std::invalid_argument("model kind must be d, d' or g");
    }
}

inline bool is_df_model(const BitMatrix& r1, const BitMatrix& r2) {
    const auto n = r1.size();
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    for (auto x : all)
        if (!r1.test(x, x)) return false;
    return detail::all_pairs(all, [&](auto x, auto y) {
               return (!r2.test(x, y) || r2.test(y, x)) && (!r1.test(x, y) || r2.test(x, y));
           }) &&
           detail::all_triples(all, [&](auto x, auto y, auto z) {
               if (r1.test(x, y) && r1.test(y, z) && !r1.test(x, z)) return false;
               if (r2.test(x, y) && r1.test(y, z) && !r2.test(x, z)) return false;
               return true;
           });
}

inline bool is_df_model(const DFModel& m) { return is_df_model(m.r1, m.r2); }

inline bool is_core(const Structure& m) { return m.range().size() == m.base_size(); }

inline Structure core_substructure(const Structure& m) {
    const auto r = m.range();
    std::vector<std::size_t> index(m.base_size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) index[r[i]] = i;
    Structure out = Structure::blank(r.size(), m.term_count());
    for (std::size_t i = 0; i < r.size(); ++i) out.labels[i] = m.labels[r[i]];
    for (std::size_t t = 0; t < m.term_count(); ++t) out.mu[t] = index[m.mu[t]];
    for (auto q : kQualities)
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = 0; j < r.size(); ++j) out[q].assign(i, j, m[q].test(r[i], r[j]));
    return out;
}

inline std::string group_label(std::vector<std::string> parts) {
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out + "}";
}

// Identifies elements related by A* in both directions.
inline Structure quotient(const Structure& m) {
    if (!is_core(m)) throw std::invalid_argument("quotient needs a core structure");
    if (!is_dprime_model(m)) throw std::invalid_argument("quotient needs a core d'- or g-model");
    const auto n = m.base_size();
    const auto& A = m[Quality::A];
    std::vector<std::size_t> cls(n, n);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t x = 0; x < n; ++x) {
        if (cls[x] != n) continue;
        members.emplace_back();
        for (std::size_t y = x; y < n; ++y)
            if (A.test(x, y) && A.test(y, x)) {
                cls[y] = members.size() - 1;
                members.back().push_back(y);
            }
    }
    Structure out = Structure::blank(members.size(), m.term_count());
    for (std::size_t c = 0; c < members.size(); ++c) {
        if (members[c].size() == 1) {
            out.labels[c] = m.labels[members[c][0]];
            continue;
        }
        std::vector<std::string> parts;
        for (auto x : members[c]) parts.push_back(m.labels[x]);
        out.labels[c] = group_label(parts);
    }
    for (std::size_t t = 0; t < m.term_count(); ++t) out.mu[t] = cls[m.mu[t]];
    for (auto q : kQualities)
        for (std::size_t x = 0; x < n; ++x)
            m[q].for_each_in_row(x, [&](std::size_t y) { out[q].set(cls[x], cls[y]); });
    return out;
}

// Adds a witness element below every I-pair that lacks an A-lower bound.
inline OrderModel order_completion(const Structure& m, SystemKind e) {
    if (!is_core(m)) throw std::invalid_argument("order completion needs a core structure");
    if (!is_model_of_kind(m, e)) throw std::invalid_argument("structure is not a model of the requested kind");
    if (!is_consistent_structure(m)) throw std::invalid_argument("order completion needs a consistent structure");
    const auto n0 = m.base_size();
    const auto& A0 = m[Quality::A];
    const auto& I0 = m[Quality::I];
    auto has_lower_bound = [&](std::size_t x, std::size_t y) {
        for (std::size_t z = 0; z < n0; ++z)
            if (A0.test(z, x) && A0.test(z, y)) return true;
        return false;
    };
    std::vector<std::pair<std::size_t, std::size_t>> extra;
    for (std::size_t x = 0; x < n0; ++x)
        for (std::size_t y = x; y < n0; ++y)
            if ((I0.test(x, y) || I0.test(y, x)) && !has_lower_bound(x, y)) extra.emplace_back(x, y);
    const auto n1 = n0 + extra.size();
    OrderModel out{m.labels, BitMatrix(n1), m.mu};
    for (std::size_t x = 0; x < n0; ++x)
        A0.for_each_in_row(x, [&](std::size_t y) { out.r1.set(x, y); });
    for (std::size_t k = 0; k < extra.size(); ++k) {
        auto [x, y] = extra[k];
        const auto w = n0 + k;
        out.labels.push_back(group_label({m.labels[x], m.labels[y]}));
        out.r1.set(w, w);
        for (std::size_t z = 0; z < n0; ++z)
            if (A0.test(x, z) || A0.test(y, z)) out.r1.set(w, z);
    }
    return out;
}

struct VennExtraction {
    VennModel venn;
    std::vector<std::size_t> h; // base element -> index in venn.sets
};

// h(b) = the unordered R2-pairs having a member R1-below b. A pair {x,y}
// with x ≤ y is the point x·|B| + y.
inline VennExtraction venn_from_df(const DFModel& m) {
    if (!is_df_model(m)) throw std::invalid_argument("venn_from_df needs a DF model");
    const auto n = m.base_size();
    VennExtraction out;
    for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::uint32_t> points;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x; y < n; ++y)
                if ((m.r2.test(x, y) || m.r2.test(y, x)) && (m.r1.test(x, b) || m.r1.test(y, b)))
                    points.push_back(static_cast<std::uint32_t>(x * n + y));
        out.h.push_back(out.venn.intern(points));
    }
    for (auto t : m.mu) out.venn.mu.push_back(out.h[t]);
    return out;
}

// b ↦ its R1-lower set.
inline VennModel order_to_com(const OrderModel& m) {
    VennModel out;
    std::vector<std::size_t> image;
    for (std::size_t b = 0; b < m.base_size(); ++b) {
        std::vector<std::uint32_t> lower;
        for (std::size_t x = 0; x < m.base_size(); ++x)
            if (m.r1.test(x, b)) lower.push_back(static_cast<std::uint32_t>(x));
        image.push_back(out.intern(lower));
    }
    for (auto t : m.mu) out.mu.push_back(image[t]);
    return out;
}

// Removes the identity on μ(C) from A* and adds it to O*.
inline Structure pd_modify(const Structure& m, const std::vector<TermId>& essential) {
    std::set<std::size_t> images;
    for (auto t : essential)
        if (!images.insert(m.mu.at(t)).second) throw std::invalid_argument("μ is not injective on the essential terms");
    const auto r = m.range();
    const auto& A = m[Quality::A];
    for (auto x : r)
        for (auto y : r)
            if (x != y && A.test(x, y) && A.test(y, x)) throw std::invalid_argument("A* is not antisymmetric on μ(C)");
    Structure out = m;
    for (auto x : r) {
        out[Quality::A].reset(x, x);
        out[Quality::O].set(x, x);
    }
    return out;
}

} // namespace syl
