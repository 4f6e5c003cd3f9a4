#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "construction.hpp"
#include "deduction.hpp"
#include "independence.hpp"
#include "sequent.hpp"
#include "serialize.hpp"
#include "sorites.hpp"

namespace syl::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kParse = 2;
inline constexpr int kPrecondition = 3;
} // namespace exit_code

struct Options {
    std::string kb_path;
    std::string sentence;
    std::string system = "d";
    std::string kind = "leibniz";
    std::string format = "text";
    std::uint64_t seed = 0;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline KnowledgeBase load_kb(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    return parse_kb(text);
}

inline SystemId system_or_throw(const std::string& name) {
    auto sys = parse_system(name);
    if (!sys) throw UsageError("unknown system '" + name + "'");
    return *sys;
}

inline bool json(const Options& o) { return o.format == "json"; }

inline void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

// A proof of s: a direct derivation when one exists in the requested system
// (or in d, for refutational systems), a sequent derivation otherwise.
struct Proof {
    std::optional<Derivation> direct;
    std::optional<G2Derivation> sequents;
};

inline Proof proof_of(const KnowledgeBase& kb, const Sentence& s, const SystemId& sys) {
    if (is_direct(sys)) return {derivation_of(kb, s, sys), std::nullopt};
    if (sys.excluded) return {};
    if (auto d = derivation_of(kb, s, systems::d)) return {std::move(d), std::nullopt};
    return {std::nullopt, emit_g2_derivation(kb, s)};
}

inline void print_proof(std::ostream& out, const Proof& p, const KnowledgeBase& kb) {
    if (p.direct) out << render_derivation(*p.direct, kb);
    else if (p.sequents) out << render_g2(*p.sequents, kb);
}

inline Json proof_json(const Proof& p, const KnowledgeBase& kb) {
    if (p.direct) return derivation_json(*p.direct, kb);
    if (p.sequents) return g2_json(*p.sequents, kb);
    return nullptr;
}

inline int decide(const Options& o, std::ostream& out) {
    const auto kb = load_kb(o.kb_path);
    const auto sys = system_or_throw(o.system);
    if (!is_direct(sys)) throw UsageError("decide expects a direct system");
    const auto verdict = is_consistent(kb, sys);
    using Kind = Consistency::Kind;
    if (json(o)) {
        Json j{{"system", system_name(sys)}};
        switch (verdict.kind) {
        case Kind::Consistent: j["verdict"] = "consistent"; break;
        case Kind::Contradictory:
            j["verdict"] = "contradictory";
            j["witness"] = {render(*verdict.witness, kb), render(*verdict.counter, kb)};
            break;
        case Kind::PlainlyContradictory:
            j["verdict"] = "plainly contradictory";
            j["witness"] = {render(*verdict.witness, kb)};
            break;
        }
        print_json(out, j);
    } else {
        switch (verdict.kind) {
        case Kind::Consistent: out << "consistent\n"; break;
        case Kind::Contradictory:
            out << "contradictory: " << render(*verdict.witness, kb) << ", " << render(*verdict.counter, kb) << '\n';
            break;
        case Kind::PlainlyContradictory: out << "plainly contradictory: " << render(*verdict.witness, kb) << '\n'; break;
        }
    }
    return verdict.consistent() ? exit_code::kOk : exit_code::kNegative;
}

inline int closure_verb(const Options& o, std::ostream& out) {
    const auto kb = load_kb(o.kb_path);
    const auto sys = system_or_throw(o.system);
    const auto result = closure(kb, sys);
    if (json(o)) {
        print_json(out, closure_json(result, kb));
    } else {
        for (const auto& s : canonical_order(result, kb.symbols())) out << render(s, kb) << '\n';
    }
    return exit_code::kOk;
}

inline int entails_or_derive(const Options& o, std::ostream& out, bool check_precondition) {
    auto kb = load_kb(o.kb_path);
    const auto s = parse_sentence(o.sentence, kb);
    const auto sys = system_or_throw(o.system);
    const bool yes = check_precondition ? entails(kb, s, sys) : derives_any(kb, s, sys);
    const auto proof = yes ? proof_of(kb, s, sys) : Proof{};
    if (json(o)) {
        print_json(out, {{"system", system_name(sys)}, {"entailed", yes}, {"derivation", proof_json(proof, kb)}});
    } else if (check_precondition) {
        out << (yes ? "yes" : "no") << '\n';
        print_proof(out, proof, kb);
    } else if (yes) {
        print_proof(out, proof, kb);
    } else {
        out << "none\n";
    }
    return yes ? exit_code::kOk : exit_code::kNegative;
}

inline int model(const Options& o, std::ostream& out, std::ostream& err) {
    const auto kb = load_kb(o.kb_path);
    try {
        if (o.kind == "leibniz") print_json(out, leibniz_json(assign_leibniz(kb), kb));
        else if (o.kind == "venn") print_json(out, venn_json(venn_direct(kb), kb));
        else print_json(out, structure_json(pd_model(kb), kb));
    } catch (const InconsistentKnowledgeBase& e) {
        err << e.what() << '\n';
        return exit_code::kNegative;
    }
    return exit_code::kOk;
}

inline int sorites(const Options& o, std::ostream& out) {
    auto kb = load_kb(o.kb_path);
    const auto s = parse_sentence(o.sentence, kb);
    const auto sys = system_or_throw(o.system);
    if (!is_direct(sys)) throw UsageError("sorites expects a direct system");
    const auto routed = synthesize_sorites_routed(kb, s, sys);
    if (json(o)) {
        Json j{{"system", system_name(routed.system)}};
        j["sorites"] = routed.sorites ? derivation_json(*routed.sorites, kb) : Json(nullptr);
        print_json(out, j);
    } else if (routed.sorites) {
        if (routed.system != sys) out << "system: " << system_name(routed.system) << '\n';
        out << render_derivation(*routed.sorites, kb);
    } else {
        out << "none\n";
    }
    return routed.sorites ? exit_code::kOk : exit_code::kNegative;
}

inline int independence(const Options& o, std::ostream& out) {
    const auto report = full_report();
    if (json(o)) print_json(out, report_json(report));
    else out << render_report(report);
    return exit_code::kOk;
}

inline int g2prove(const Options& o, std::ostream& out) {
    auto kb = load_kb(o.kb_path);
    const auto s = parse_sentence(o.sentence, kb);
    const auto proof = emit_g2_derivation(kb, s);
    if (json(o)) print_json(out, {{"derivation", proof ? g2_json(*proof, kb) : Json(nullptr)}});
    else out << (proof ? render_g2(*proof, kb) : std::string("none\n"));
    return proof ? exit_code::kOk : exit_code::kNegative;
}

} // namespace detail

// Runs one command line (without the program name). Output goes to out,
// diagnostics to err; the return value is the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Decision procedures for syllogistic knowledge bases", "syllo"};
    app.require_subcommand(1);

    auto with_system = [&](CLI::App* sub) {
        sub->add_option("--system", o.system, "d, d', d'', wd, pd, g, g', g'' or <system>_<Rule>");
    };
    auto with_kb = [&](CLI::App* sub) { sub->add_option("kb", o.kb_path, "Knowledge base file, - for stdin")->required(); };
    auto with_sentence = [&](CLI::App* sub) {
        sub->add_option("sentence", o.sentence, "Sentence such as \"A a b\"")->required();
    };

    auto* decide = app.add_subcommand("decide", "Decide consistency");
    with_kb(decide);
    with_system(decide);
    auto* closure = app.add_subcommand("closure", "List the closure under a system");
    with_kb(closure);
    with_system(closure);
    auto* entails = app.add_subcommand("entails", "Decide entailment and show a derivation");
    with_kb(entails);
    with_sentence(entails);
    with_system(entails);
    auto* derive = app.add_subcommand("derive", "Show a derivation");
    with_kb(derive);
    with_sentence(derive);
    with_system(derive);
    auto* model = app.add_subcommand("model", "Build a model of a consistent knowledge base");
    with_kb(model);
    model->add_option("--kind", o.kind, "leibniz, venn or pd")->check(CLI::IsMember({"leibniz", "venn", "pd"}));
    auto* sorites = app.add_subcommand("sorites", "Synthesize a sorites deduction");
    with_kb(sorites);
    with_sentence(sorites);
    with_system(sorites);
    auto* independence = app.add_subcommand("independence", "Rule independence report");
    auto* g2prove = app.add_subcommand("g2prove", "Sequent derivation in g''");
    with_kb(g2prove);
    with_sentence(g2prove);
    for (auto* sub : app.get_subcommands({})) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", o.seed, "Seed for randomized operations");
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_code::kParse;
    }

    try {
        if (decide->parsed()) return detail::decide(o, out);
        if (closure->parsed()) return detail::closure_verb(o, out);
        if (entails->parsed()) return detail::entails_or_derive(o, out, true);
        if (derive->parsed()) return detail::entails_or_derive(o, out, false);
        if (model->parsed()) return detail::model(o, out, err);
        if (sorites->parsed()) return detail::sorites(o, out);
        if (independence->parsed()) return detail::independence(o, out);
        if (g2prove->parsed()) return detail::g2prove(o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_code::kParse;
    } catch (const UsageError& e) {
        err << e.what() << '\n';
        return exit_code::kParse;
    } catch (const PreconditionViolation& e) {
        err << "precondition violated: " << e.what() << '\n';
        return exit_code::kPrecondition;
    }
    return exit_code::kParse;
}

} // namespace syl::cli
