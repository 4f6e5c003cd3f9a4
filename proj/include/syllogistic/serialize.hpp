#pragma once

#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "deduction.hpp"
#include "independence.hpp"
#include "models.hpp"
#include "sequent.hpp"

namespace syl {

using Json = nlohmann::ordered_json;

inline std::string justification_text(const Justification& why) {
    if (std::holds_alternative<Assumption>(why)) return "assumption";
    const auto& app = std::get<RuleApp>(why);
    std::string out(rule_name(app.rule));
    for (std::size_t i = 0; i < app.premises.size(); ++i) {
        out += i == 0 ? ' ' : ',';
        out += std::to_string(app.premises[i] + 1);
    }
    return out;
}

// One line per step: "k. A a c  [Barbara 1,2]", numbered from 1.
inline std::string render_derivation(const Derivation& d, const KnowledgeBase& kb) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i)
        out += std::to_string(i + 1) + ". " + render(d[i].sentence, kb) + "  [" + justification_text(d[i].why) + "]\n";
    return out;
}

inline Json derivation_json(const Derivation& d, const KnowledgeBase& kb) {
    Json out = Json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        Json line{{"line", i + 1}, {"sentence", render(d[i].sentence, kb)}};
        if (std::holds_alternative<Assumption>(d[i].why)) {
            line["rule"] = "assumption";
            line["premises"] = Json::array();
        } else {
            const auto& app = std::get<RuleApp>(d[i].why);
            line["rule"] = std::string(rule_name(app.rule));
            Json premises = Json::array();
            for (auto p : app.premises) premises.push_back(p + 1);
            line["premises"] = premises;
        }
        out.push_back(line);
    }
    return out;
}

inline std::string render_sequent(const Sequent& s, const KnowledgeBase& kb) {
    std::string out;
    for (std::size_t i = 0; i < s.context.size(); ++i) {
        if (i > 0) out += ", ";
        out += render(s.context[i], kb);
    }
    out += out.empty() ? "⊢ " : " ⊢ ";
    return out + render(s.conclusion, kb);
}

inline std::string render_g2(const G2Derivation& d, const KnowledgeBase& kb) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        out += std::to_string(i + 1) + ". " + render_sequent(d[i].sequent, kb) + "  [" +
               std::string(rule_name(d[i].rule));
        for (std::size_t j = 0; j < d[i].premises.size(); ++j) {
            out += j == 0 ? ' ' : ',';
            out += std::to_string(d[i].premises[j] + 1);
        }
        out += "]\n";
    }
    return out;
}

inline Json g2_json(const G2Derivation& d, const KnowledgeBase& kb) {
    Json out = Json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        Json context = Json::array();
        for (const auto& s : d[i].sequent.context) context.push_back(render(s, kb));
        Json premises = Json::array();
        for (auto p : d[i].premises) premises.push_back(p + 1);
        out.push_back({{"line", i + 1},
                       {"context", context},
                       {"conclusion", render(d[i].sequent.conclusion, kb)},
                       {"rule", std::string(rule_name(d[i].rule))},
                       {"premises", premises}});
    }
    return out;
}

inline Json sentence_list_json(const std::vector<Sentence>& sentences, const KnowledgeBase& kb) {
    Json out = Json::array();
    for (const auto& s : sentences) out.push_back(render(s, kb));
    return out;
}

// {terms: [...], A: [[x, y], ...], E: ..., I: ..., O: ...}
inline Json closure_json(const std::set<Sentence>& sentences, const KnowledgeBase& kb) {
    Json out{{"terms", kb.symbols().names()}};
    for (auto q : kQualities) out[std::string(1, quality_letter(q))] = Json::array();
    for (const auto& s : canonical_order(sentences, kb.symbols()))
        out[std::string(1, quality_letter(s.quality))].push_back(Json::array({kb.name(s.subject), kb.name(s.predicate)}));
    return out;
}

inline Json structure_json(const Structure& m, const KnowledgeBase& kb) {
    Json out{{"base", m.labels}};
    for (auto q : kQualities) {
        Json pairs = Json::array();
        for (std::size_t x = 0; x < m.base_size(); ++x)
            for (std::size_t y = 0; y < m.base_size(); ++y)
                if (m[q].test(x, y)) pairs.push_back(Json::array({m.labels[x], m.labels[y]}));
        out[std::string(1, quality_letter(q))] = pairs;
    }
    Json mu = Json::object();
    for (std::size_t t = 0; t < m.term_count(); ++t) mu[kb.name(static_cast<TermId>(t))] = m.labels.at(m.mu[t]);
    out["mu"] = mu;
    return out;
}

inline Json venn_json(const VennModel& v, const KnowledgeBase& kb) {
    Json mu = Json::object();
    for (std::size_t t = 0; t < v.term_count(); ++t) mu[kb.name(static_cast<TermId>(t))] = v.mu[t];
    return {{"sets", v.sets}, {"mu", mu}};
}

// Numbers that fit in 64 bits stay numbers; larger ones become decimal strings.
inline Json natural_json(const Natural& n) {
    if (n <= std::numeric_limits<std::uint64_t>::max()) return n.convert_to<std::uint64_t>();
    return n.str();
}

// {mu: {term: [m, n], ...}}
inline Json leibniz_json(const LeibnizModel& m, const KnowledgeBase& kb) {
    Json mu = Json::object();
    for (std::size_t t = 0; t < m.term_count(); ++t)
        mu[kb.name(static_cast<TermId>(t))] = Json::array({natural_json(m.mu[t].first), natural_json(m.mu[t].second)});
    return {{"mu", mu}};
}

inline std::string render_instance(const RuleInstance& inst) {
    std::string out = "{";
    for (std::size_t i = 0; i < inst.kb.size(); ++i) {
        if (i > 0) out += ", ";
        out += render(inst.kb.sentences()[i], inst.kb);
    }
    return out + "} / " + render(inst.conclusion, inst.kb);
}

inline std::string render_report(const IndependenceReport& report) {
    std::string out;
    for (const auto& c : report.cells) {
        out += independence_system_name(c.system) + "  " + std::string(rule_name(c.rule)) + "  " + c.status();
        if (c.witness) out += "  " + render_instance(*c.witness);
        out += '\n';
    }
    for (const auto& sys : independence_systems()) {
        out += independence_system_name(sys) + ": ";
        if (report.system_independent(sys)) out += "independent";
        else if (report.system_weakly_independent(sys)) out += "weakly independent";
        else out += "not independent";
        out += '\n';
    }
    return out;
}

inline Json report_json(const IndependenceReport& report) {
    Json cells = Json::array();
    for (const auto& c : report.cells) {
        Json cell{{"system", independence_system_name(c.system)},
                  {"rule", std::string(rule_name(c.rule))},
                  {"status", c.status()}};
        if (c.witness) {
            Json premises = Json::array();
            for (const auto& s : c.witness->kb.sentences()) premises.push_back(render(s, c.witness->kb));
            cell["witness"] = {{"premises", premises}, {"conclusion", render(c.witness->conclusion, c.witness->kb)}};
        }
        if (c.derivation) {
            cell["derivation"] = derivation_json(*c.derivation, detail::rule_instances(c.rule).front().kb);
        }
        cells.push_back(cell);
    }
    Json systems = Json::object();
    for (const auto& sys : independence_systems())
        systems[independence_system_name(sys)] = {{"independent", report.system_independent(sys)},
                                                  {"weaklyIndependent", report.system_weakly_independent(sys)}};
    return {{"cells", cells}, {"systems", systems}};
}

} // namespace syl
