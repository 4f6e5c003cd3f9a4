#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace syl {

using TermId = std::uint32_t;

enum class Quality : std::uint8_t { A = 0, E = 1, I = 2, O = 3 };

inline constexpr Quality kQualities[] = {Quality::A, Quality::E, Quality::I, Quality::O};

struct Sentence {
    Quality quality = Quality::A;
    TermId subject = 0;
    TermId predicate = 0;

    friend auto operator<=>(const Sentence&, const Sentence&) = default;
};

inline constexpr Sentence make(Quality q, TermId s, TermId p) { return Sentence{q, s, p}; }

inline constexpr bool is_universal(Quality q) { return q == Quality::A || q == Quality::E; }
inline constexpr bool is_particular(Quality q) { return !is_universal(q); }
inline constexpr bool is_affirmative(Quality q) { return q == Quality::A || q == Quality::I; }
inline constexpr bool is_negative(Quality q) { return !is_affirmative(q); }

inline constexpr bool is_universal(const Sentence& s) { return is_universal(s.quality); }
inline constexpr bool is_particular(const Sentence& s) { return is_particular(s.quality); }
inline constexpr bool is_affirmative(const Sentence& s) { return is_affirmative(s.quality); }
inline constexpr bool is_negative(const Sentence& s) { return is_negative(s.quality); }
inline constexpr bool is_reflexive(const Sentence& s) { return s.subject == s.predicate; }

inline constexpr Quality contradictory(Quality q) {
    switch (q) {
    case Quality::A: return Quality::O;
    case Quality::E: return Quality::I;
    case Quality::I: return Quality::E;
    case Quality::O: return Quality::A;
    }
    return q;
}

inline constexpr Sentence contradictory(const Sentence& s) {
    return Sentence{contradictory(s.quality), s.subject, s.predicate};
}

inline constexpr char quality_letter(Quality q) { return "AEIO"[static_cast<int>(q)]; }

inline std::optional<Quality> parse_quality(std::string_view token) {
    if (token.size() != 1) return std::nullopt;
    switch (token[0]) {
    case 'A': return Quality::A;
    case 'E': return Quality::E;
    case 'I': return Quality::I;
    case 'O': return Quality::O;
    default: return std::nullopt;
    }
}

inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = static_cast<unsigned char>(s[0]);
    if (!(std::isalpha(head) || head == '_')) return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) {
        auto u = static_cast<unsigned char>(c);
        return std::isalnum(u) || u == '_' || u == '\'';
    });
}

class SymbolTable {
public:
    TermId intern(const std::string& name) {
        if (auto it = index_.find(name); it != index_.end()) return it->second;
        auto id = static_cast<TermId>(names_.size());
        names_.push_back(name);
        index_.emplace(name, id);
        return id;
    }

    std::optional<TermId> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& name(TermId id) const { return names_.at(id); }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }

    friend bool operator==(const SymbolTable& a, const SymbolTable& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, TermId> index_;
};

// Γ together with its finite term universe. Sentences keep insertion order
// and are deduplicated; the universe is every interned symbol.
class KnowledgeBase {
public:
    KnowledgeBase() = default;

    TermId add_term(const std::string& name) { return symbols_.intern(name); }

    // Grows the universe to hold at least n terms named t0, t1, ...
    void ensure_terms(std::size_t n) {
        while (symbols_.size() < n) symbols_.intern("t" + std::to_string(symbols_.size()));
    }

    bool add(const Sentence& s) {
        if (s.subject >= symbols_.size() || s.predicate >= symbols_.size())
            throw std::out_of_range("sentence mentions a term outside the universe");
        if (present_.count(s)) return false;
        present_.insert(s);
        sentences_.push_back(s);
        return true;
    }

    Sentence add(Quality q, const std::string& subject, const std::string& predicate) {
        Sentence s{q, add_term(subject), add_term(predicate)};
        add(s);
        return s;
    }

    bool contains(const Sentence& s) const { return present_.count(s) != 0; }
    const std::vector<Sentence>& sentences() const { return sentences_; }
    std::size_t size() const { return sentences_.size(); }
    std::size_t universe_size() const { return symbols_.size(); }
    const SymbolTable& symbols() const { return symbols_; }
    const std::string& name(TermId t) const { return symbols_.name(t); }

    std::optional<TermId> term(const std::string& name) const { return symbols_.find(name); }

    TermId term_or_throw(const std::string& name) const {
        auto t = symbols_.find(name);
        if (!t) throw std::invalid_argument("unknown term '" + name + "'");
        return *t;
    }

    // Same universe, sentences replaced.
    KnowledgeBase with_sentences(const std::vector<Sentence>& sentences) const {
        KnowledgeBase out;
        out.symbols_ = symbols_;
        for (const auto& s : sentences) out.add(s);
        return out;
    }

    KnowledgeBase with(const Sentence& extra) const {
        KnowledgeBase out = *this;
        out.add(extra);
        return out;
    }

    friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
        return a.symbols_ == b.symbols_ && a.present_ == b.present_;
    }

private:
    SymbolTable symbols_;
    std::vector<Sentence> sentences_;
    std::set<Sentence> present_;
};

inline std::vector<TermId> essential_terms(const KnowledgeBase& kb) {
    std::set<TermId> out;
    for (const auto& s : kb.sentences()) {
        if (is_reflexive(s)) continue;
        out.insert(s.subject);
        out.insert(s.predicate);
    }
    return {out.begin(), out.end()};
}

inline std::optional<Sentence> is_plainly_contradictory(const KnowledgeBase& kb) {
    for (const auto& s : kb.sentences())
        if (is_reflexive(s) && is_negative(s)) return s;
    return std::nullopt;
}

inline std::string render(const Sentence& s, const SymbolTable& symbols) {
    std::string out(1, quality_letter(s.quality));
    out += ' ';
    out += symbols.name(s.subject);
    out += ' ';
    out += symbols.name(s.predicate);
    return out;
}

inline std::string render(const Sentence& s, const KnowledgeBase& kb) { return render(s, kb.symbols()); }

// Canonical output order: quality, then subject symbol, then predicate symbol.
inline bool canonical_less(const Sentence& x, const Sentence& y, const SymbolTable& symbols) {
    if (x.quality != y.quality) return x.quality < y.quality;
    const auto& xs = symbols.name(x.subject);
    const auto& ys = symbols.name(y.subject);
    if (xs != ys) return xs < ys;
    return symbols.name(x.predicate) < symbols.name(y.predicate);
}

template <class Range>
std::vector<Sentence> canonical_order(const Range& sentences, const SymbolTable& symbols) {
    std::vector<Sentence> out(std::begin(sentences), std::end(sentences));
    std::sort(out.begin(), out.end(),
              [&](const Sentence& x, const Sentence& y) { return canonical_less(x, y, symbols); });
    return out;
}

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string word;
    while (in >> word) out.push_back(word);
    return out;
}

inline Sentence parse_sentence_words(const std::vector<std::string>& words, KnowledgeBase& kb,
                                     std::size_t line) {
    if (words.size() != 3)
        throw ParseError(line, "expected '<Q> <subject> <predicate>', got " + std::to_string(words.size()) +
                                   " token(s)");
    auto q = parse_quality(words[0]);
    if (!q) throw ParseError(line, "unknown quality '" + words[0] + "'");
    for (std::size_t i = 1; i < 3; ++i)
        if (!is_identifier(words[i])) throw ParseError(line, "malformed identifier '" + words[i] + "'");
    Sentence s{*q, kb.add_term(words[1]), kb.add_term(words[2])};
    return s;
}

} // namespace detail

inline KnowledgeBase parse_kb(std::string_view text) {
    KnowledgeBase kb;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto words = detail::split_words(line);
        if (words.empty()) continue;
        if (words[0].rfind("terms:", 0) == 0) {
            std::vector<std::string> names(words.begin() + 1, words.end());
            if (words[0].size() > 6) names.insert(names.begin(), words[0].substr(6));
            for (const auto& n : names) {
                if (!is_identifier(n)) throw ParseError(line_no, "malformed identifier '" + n + "'");
                kb.add_term(n);
            }
            continue;
        }
        kb.add(detail::parse_sentence_words(words, kb, line_no));
    }
    return kb;
}

// Parses "A a b"; unknown terms are added to the universe.
inline Sentence parse_sentence(std::string_view text, KnowledgeBase& kb) {
    return detail::parse_sentence_words(detail::split_words(text), kb, 1);
}

// Parses "A a b" against a fixed universe.
inline Sentence parse_sentence(std::string_view text, const KnowledgeBase& kb) {
    auto words = detail::split_words(text);
    if (words.size() != 3) throw ParseError(1, "expected '<Q> <subject> <predicate>'");
    auto q = parse_quality(words[0]);
    if (!q) throw ParseError(1, "unknown quality '" + words[0] + "'");
    auto s = kb.term(words[1]);
    auto p = kb.term(words[2]);
    if (!s) throw ParseError(1, "unknown term '" + words[1] + "'");
    if (!p) throw ParseError(1, "unknown term '" + words[2] + "'");
    return Sentence{*q, *s, *p};
}

// The header lists the whole universe in id order so that parsing restores
// the same interning.
inline std::string render_kb(const KnowledgeBase& kb) {
    std::string out;
    if (kb.universe_size() > 0) {
        out += "terms:";
        for (const auto& n : kb.symbols().names()) out += ' ' + n;
        out += '\n';
    }
    for (const auto& s : canonical_order(kb.sentences(), kb.symbols())) out += render(s, kb) + '\n';
    return out;
}

// Dense index of a sentence among the 4·n² sentences over n terms.
inline std::size_t sentence_code(const Sentence& s, std::size_t n) {
    return (static_cast<std::size_t>(s.quality) * n + s.subject) * n + s.predicate;
}

inline Sentence sentence_from_code(std::size_t code, std::size_t n) {
    auto pred = static_cast<TermId>(code % n);
    code /= n;
    auto subj = static_cast<TermId>(code % n);
    return Sentence{static_cast<Quality>(code / n), subj, pred};
}

inline std::vector<Sentence> all_sentences(std::size_t n) {
    std::vector<Sentence> out;
    out.reserve(4 * n * n);
    for (auto q : kQualities)
        for (TermId x = 0; x < n; ++x)
            for (TermId y = 0; y < n; ++y) out.push_back({q, x, y});
    return out;
}

} // namespace syl
