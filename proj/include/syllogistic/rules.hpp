#pragma once

#include <array>
#include <bitset>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace syl {

// Declaration order is the provenance tie-break order.
enum class RuleId : std::uint8_t {
    AId, Apc, Ec, Barbara, Celarent,
    Ic, Darii, Ferio, Baroco, Bocardo,
    ESub, Ferison,
    IId, OId,
    Co,
    AIdP, ApcP, EcP, BarbaraP, CelarentP, Ass, Raa,
};

inline constexpr std::size_t kRuleCount = 22;

inline constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "AId", "Apc", "Ec", "Barbara", "Celarent", "Ic", "Darii", "Ferio", "Baroco", "Bocardo", "ESub",
    "Ferison", "IId", "OId", "Co", "AId'", "Apc'", "Ec'", "Barbara'", "Celarent'", "Ass", "Raa",
};

inline std::string_view rule_name(RuleId r) { return kRuleNames[static_cast<std::size_t>(r)]; }

inline std::optional<RuleId> parse_rule(std::string_view name) {
    for (std::size_t i = 0; i < kRuleCount; ++i)
        if (kRuleNames[i] == name) return static_cast<RuleId>(i);
    return std::nullopt;
}

inline constexpr int arity(RuleId r) {
    switch (r) {
    case RuleId::AId:
    case RuleId::IId:
    case RuleId::OId:
    case RuleId::AIdP:
    case RuleId::Ass: return 0;
    case RuleId::Apc:
    case RuleId::Ec:
    case RuleId::Ic:
    case RuleId::ESub:
    case RuleId::ApcP:
    case RuleId::EcP: return 1;
    default: return 2;
    }
}

inline constexpr bool is_sequent_rule(RuleId r) { return r >= RuleId::AIdP; }

// The g'' rule r' that mirrors a direct rule r.
inline constexpr std::optional<RuleId> primed(RuleId r) {
    switch (r) {
    case RuleId::AId: return RuleId::AIdP;
    case RuleId::Apc: return RuleId::ApcP;
    case RuleId::Ec: return RuleId::EcP;
    case RuleId::Barbara: return RuleId::BarbaraP;
    case RuleId::Celarent: return RuleId::CelarentP;
    default: return std::nullopt;
    }
}

inline constexpr std::optional<RuleId> unprimed(RuleId r) {
    switch (r) {
    case RuleId::AIdP: return RuleId::AId;
    case RuleId::ApcP: return RuleId::Apc;
    case RuleId::EcP: return RuleId::Ec;
    case RuleId::BarbaraP: return RuleId::Barbara;
    case RuleId::CelarentP: return RuleId::Celarent;
    default: return std::nullopt;
    }
}

class RuleSet {
public:
    RuleSet() = default;
    RuleSet(std::initializer_list<RuleId> rules) {
        for (auto r : rules) insert(r);
    }

    void insert(RuleId r) { bits_.set(static_cast<std::size_t>(r)); }
    void erase(RuleId r) { bits_.reset(static_cast<std::size_t>(r)); }
    bool contains(RuleId r) const { return bits_.test(static_cast<std::size_t>(r)); }
    bool empty() const { return bits_.none(); }

    std::vector<RuleId> list() const {
        std::vector<RuleId> out;
        for (std::size_t i = 0; i < kRuleCount; ++i)
            if (bits_.test(i)) out.push_back(static_cast<RuleId>(i));
        return out;
    }

    RuleSet without(RuleId r) const {
        RuleSet out = *this;
        out.erase(r);
        return out;
    }

    RuleSet operator|(const RuleSet& o) const {
        RuleSet out;
        out.bits_ = bits_ | o.bits_;
        return out;
    }

    friend bool operator==(const RuleSet&, const RuleSet&) = default;

private:
    std::bitset<kRuleCount> bits_;
};

enum class SystemKind : std::uint8_t { d, dPrime, dDoublePrime, wd, pd, g, gPrime, gDoublePrime };

struct SystemId {
    SystemKind kind = SystemKind::d;
    std::optional<RuleId> excluded;

    friend bool operator==(const SystemId&, const SystemId&) = default;
};

namespace systems {
inline const SystemId d{SystemKind::d, std::nullopt};
inline const SystemId dPrime{SystemKind::dPrime, std::nullopt};
inline const SystemId dDoublePrime{SystemKind::dDoublePrime, std::nullopt};
inline const SystemId wd{SystemKind::wd, std::nullopt};
inline const SystemId pd{SystemKind::pd, std::nullopt};
inline const SystemId g{SystemKind::g, std::nullopt};
inline const SystemId gPrime{SystemKind::gPrime, std::nullopt};
inline const SystemId gDoublePrime{SystemKind::gDoublePrime, std::nullopt};
} // namespace systems

inline RuleSet base_rules(SystemKind kind) {
    using R = RuleId;
    RuleSet d{R::AId, R::Apc, R::Ec, R::Barbara, R::Celarent};
    RuleSet extra1{R::Ic, R::Darii, R::Ferio, R::Baroco, R::Bocardo};
    RuleSet extra2{R::ESub, R::Ferison};
    switch (kind) {
    case SystemKind::d:
    case SystemKind::g: return d;
    case SystemKind::dPrime: return d | extra1;
    case SystemKind::dDoublePrime: return d | extra1 | extra2;
    case SystemKind::wd: return d.without(R::AId);
    case SystemKind::pd: return d.without(R::AId) | RuleSet{R::IId, R::OId};
    case SystemKind::gPrime: return d | extra1 | RuleSet{R::Co};
    case SystemKind::gDoublePrime:
        return RuleSet{R::AIdP, R::ApcP, R::EcP, R::BarbaraP, R::CelarentP, R::Ass, R::Raa};
    }
    return {};
}

inline RuleSet rules(const SystemId& sys) {
    auto out = base_rules(sys.kind);
    if (sys.excluded) out.erase(*sys.excluded);
    return out;
}

inline constexpr bool is_direct(SystemKind k) {
    return k == SystemKind::d || k == SystemKind::dPrime || k == SystemKind::dDoublePrime || k == SystemKind::wd ||
           k == SystemKind::pd;
}

inline bool is_direct(const SystemId& s) { return is_direct(s.kind); }

inline constexpr bool is_refutational(SystemKind k) { return !is_direct(k); }

// d, d' and d'' without deletions: the systems that contain A-Id and derive
// plain contradictions.
inline bool is_d_family(const SystemId& s) {
    return !s.excluded &&
           (s.kind == SystemKind::d || s.kind == SystemKind::dPrime || s.kind == SystemKind::dDoublePrime);
}

inline SystemId without(SystemId base, RuleId r) {
    if (base.excluded) throw std::invalid_argument("system already has a deleted rule");
    if (!base_rules(base.kind).contains(r))
        throw std::invalid_argument(std::string(rule_name(r)) + " is not a rule of this system");
    base.excluded = r;
    return base;
}

inline std::string_view kind_name(SystemKind k) {
    switch (k) {
    case SystemKind::d: return "d";
    case SystemKind::dPrime: return "d'";
    case SystemKind::dDoublePrime: return "d''";
    case SystemKind::wd: return "wd";
    case SystemKind::pd: return "pd";
    case SystemKind::g: return "g";
    case SystemKind::gPrime: return "g'";
    case SystemKind::gDoublePrime: return "g''";
    }
    return "?";
}

inline std::string system_name(const SystemId& s) {
    std::string out(kind_name(s.kind));
    if (s.excluded) {
        out += '_';
        out += rule_name(*s.excluded);
    }
    return out;
}

// Accepts "d", "d'", "d''", "wd", "pd", "g", "g'", "g''", optionally
// followed by "_<Rule>" for a deleted variant.
inline std::optional<SystemId> parse_system(std::string_view text) {
    std::string_view head = text;
    std::optional<RuleId> excluded;
    if (auto us = text.find('_'); us != std::string_view::npos) {
        head = text.substr(0, us);
        excluded = parse_rule(text.substr(us + 1));
        if (!excluded) return std::nullopt;
    }
    static constexpr std::array<SystemKind, 8> kinds = {
        SystemKind::d, SystemKind::dPrime, SystemKind::dDoublePrime, SystemKind::wd,
        SystemKind::pd, SystemKind::g, SystemKind::gPrime, SystemKind::gDoublePrime};
    for (auto k : kinds) {
        if (kind_name(k) != head) continue;
        if (excluded && !base_rules(k).contains(*excluded)) return std::nullopt;
        return SystemId{k, excluded};
    }
    return std::nullopt;
}

// Applies a direct rule to premises in schema order. Zero-ary rules take the
// term to instantiate.
inline std::optional<Sentence> apply_rule(RuleId rule, std::span<const Sentence> premises,
                                          std::optional<TermId> term = std::nullopt) {
    if (is_sequent_rule(rule)) throw std::invalid_argument("sequent rules apply to sequents, not sentences");
    if (rule == RuleId::Co) throw std::invalid_argument("Co has no determined conclusion; use licenses()");
    if (static_cast<int>(premises.size()) != arity(rule))
        throw std::invalid_argument("rule " + std::string(rule_name(rule)) + " expects " +
                                    std::to_string(arity(rule)) + " premise(s)");
    using Q = Quality;
    auto is = [](const Sentence& s, Q q) { return s.quality == q; };
    switch (rule) {
    case RuleId::AId:
    case RuleId::IId:
    case RuleId::OId: {
        if (!term) throw std::invalid_argument("zero-ary rule needs a term");
        Q q = rule == RuleId::AId ? Q::A : rule == RuleId::IId ? Q::I : Q::O;
        return Sentence{q, *term, *term};
    }
    case RuleId::Apc:
        if (is(premises[0], Q::A)) return Sentence{Q::I, premises[0].predicate, premises[0].subject};
        return std::nullopt;
    case RuleId::Ec:
        if (is(premises[0], Q::E)) return Sentence{Q::E, premises[0].predicate, premises[0].subject};
        return std::nullopt;
    case RuleId::Ic:
        if (is(premises[0], Q::I)) return Sentence{Q::I, premises[0].predicate, premises[0].subject};
        return std::nullopt;
    case RuleId::ESub:
        if (is(premises[0], Q::E)) return Sentence{Q::O, premises[0].subject, premises[0].predicate};
        return std::nullopt;
    default: break;
    }
    const Sentence& p = premises[0];
    const Sentence& q = premises[1];
    switch (rule) {
    case RuleId::Barbara: // Aab, Abc / Aac
        if (is(p, Q::A) && is(q, Q::A) && p.predicate == q.subject) return Sentence{Q::A, p.subject, q.predicate};
        break;
    case RuleId::Celarent: // Aab, Ebc / Eac
        if (is(p, Q::A) && is(q, Q::E) && p.predicate == q.subject) return Sentence{Q::E, p.subject, q.predicate};
        break;
    case RuleId::Darii: // Iab, Abc / Iac
        if (is(p, Q::I) && is(q, Q::A) && p.predicate == q.subject) return Sentence{Q::I, p.subject, q.predicate};
        break;
    case RuleId::Ferio: // Iab, Ebc / Oac
        if (is(p, Q::I) && is(q, Q::E) && p.predicate == q.subject) return Sentence{Q::O, p.subject, q.predicate};
        break;
    case RuleId::Baroco: // Oab, Acb / Oac
        if (is(p, Q::O) && is(q, Q::A) && p.predicate == q.predicate) return Sentence{Q::O, p.subject, q.subject};
        break;
    case RuleId::Bocardo: // Aba, Obc / Oac
        if (is(p, Q::A) && is(q, Q::O) && p.subject == q.subject) return Sentence{Q::O, p.predicate, q.predicate};
        break;
    case RuleId::Ferison: // Iba, Ebc / Oac
        if (is(p, Q::I) && is(q, Q::E) && p.subject == q.subject) return Sentence{Q::O, p.predicate, q.predicate};
        break;
    default: break;
    }
    return std::nullopt;
}

// True when the premises (in either order for two-premise rules) yield the
// conclusion under the rule.
inline bool licenses(RuleId rule, std::span<const Sentence> premises, const Sentence& conclusion) {
    if (is_sequent_rule(rule)) return false;
    if (static_cast<int>(premises.size()) != arity(rule)) return false;
    if (rule == RuleId::Co) return premises[1] == contradictory(premises[0]);
    if (arity(rule) == 0) return apply_rule(rule, premises, conclusion.subject) == conclusion;
    if (apply_rule(rule, premises) == conclusion) return true;
    if (arity(rule) == 2) {
        std::array<Sentence, 2> swapped{premises[1], premises[0]};
        return apply_rule(rule, swapped) == conclusion;
    }
    return false;
}

} // namespace syl
