#pragma once

#include <cstdint>
#include <exception>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "constructions.hpp"
#include "document.hpp"
#include "errors.hpp"
#include "fuzz.hpp"
#include "morphisms.hpp"
#include "reflection.hpp"
#include "space.hpp"
#include "topology.hpp"

// Command-line front end. Exit codes: 0 success / true / witness found,
// 1 false / no witness / property refuted, 2 invalid input, 3 resource cap
// exceeded.

namespace pmetric::cli {

enum ExitCode : int { ok = 0, negative = 1, invalid_input = 2, resource = 3 };

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> out;
    if (text.empty())
        return out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep))
        out.push_back(item);
    if (text.back() == sep)
        out.emplace_back();
    return out;
}

inline std::vector<std::pair<std::string, std::string>> parse_pairs(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : split(text, ',')) {
        auto const eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("embedding entry '" + item + "' is not of the form a=b");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

inline RawMatrix load_raw(const std::string& path)
{
    try {
        return parse_document(read_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline std::string describe(const Violation& v, const std::vector<std::string>& labels)
{
    std::ostringstream os;
    os << v.axiom << " (";
    for (std::size_t k = 0; k < v.witness.size(); ++k)
        os << (k ? ", " : "") << (v.witness[k] < labels.size() ? labels[v.witness[k]] : "?");
    os << ")";
    auto lit = [](const Rational& r) { return pmetric::detail::rational_literal(r); };
    if (v.axiom == "triangle" && v.values.size() == 3)
        os << ": " << lit(v.values[0]) << " > " << lit(v.values[1]) << " + " << lit(v.values[2]);
    else if (!v.values.empty()) {
        os << ":";
        for (const auto& x : v.values)
            os << ' ' << lit(x);
    }
    return os.str();
}

inline json report_json(const Report& r, const std::vector<std::string>& labels)
{
    json violations = json::array();
    for (const auto& v : r.violations) {
        json w = json::array();
        for (std::size_t i : v.witness)
            w.push_back(i < labels.size() ? labels[i] : std::to_string(i));
        json vals = json::array();
        for (const auto& x : v.values)
            vals.push_back(pmetric::detail::rational_literal(x));
        violations.push_back({{"axiom", v.axiom}, {"witness", std::move(w)}, {"values", std::move(vals)}});
    }
    return {{"ok", r.ok()}, {"violations", std::move(violations)}};
}

inline Space load_space(const std::string& path)
{
    RawMatrix const raw = load_raw(path);
    Report const r = validate_pseudometric(raw);
    if (!r.ok())
        throw InputError(path + ": not a pseudometric: " + describe(r.violations.front(), raw.labels));
    return Space::from_raw(raw);
}

inline json map_json(const PointMap& m)
{
    json out = json::object();
    for (std::size_t x = 0; x < m.domain().size(); ++x)
        out[m.domain().label(x)] = m.codomain().label(m(x));
    return out;
}

inline void print_map(std::ostream& out, const PointMap& m)
{
    for (std::size_t x = 0; x < m.domain().size(); ++x)
        out << m.domain().label(x) << " -> " << m.codomain().label(m(x)) << '\n';
}

inline std::string set_text(const Space& s, const Subset& a)
{
    std::string text = "{";
    for (std::size_t k = 0; k < a.size(); ++k)
        text += (k ? ", " : "") + s.label(a.members()[k]);
    return text + "}";
}

/// Embedding from "a=a',b=b'" pairs; an empty spec maps equal labels.
inline PointMap embedding_from(const Space& sub, const Space& super, const std::string& spec)
{
    std::vector<std::size_t> img(sub.size(), super.size());
    if (spec.empty()) {
        for (std::size_t i = 0; i < sub.size(); ++i)
            img[i] = super.index(sub.label(i));
    } else {
        for (const auto& [from, to] : parse_pairs(spec)) {
            std::size_t const i = sub.index(from);
            if (img[i] != super.size())
                throw InputError("point '" + from + "' is mapped twice");
            img[i] = super.index(to);
        }
        for (std::size_t i = 0; i < sub.size(); ++i)
            if (img[i] == super.size())
                throw InputError("point '" + sub.label(i) + "' is not mapped");
    }
    return PointMap(sub, super, std::move(img));
}

inline void print_fuzz(std::ostream& out, const FuzzReport& r, bool structured)
{
    if (structured) {
        json suites = json::array();
        for (const auto& s : r.suites)
            suites.push_back(
                {{"suite", s.name}, {"cases", s.cases}, {"checks", s.checks}, {"failures", s.failures}});
        json doc{{"seed", r.seed}, {"count", r.count}, {"max_n", r.max_n}, {"ok", r.ok()},
                 {"suites", std::move(suites)}};
        if (r.first_failure) {
            json spaces = json::object();
            for (const auto& [name, s] : r.first_failure->spaces)
                spaces[name] = to_json(s);
            doc["counterexample"] = {{"suite", r.first_failure->suite},
                                     {"property", r.first_failure->property},
                                     {"case_seed", r.first_failure->case_seed},
                                     {"detail", r.first_failure->detail},
                                     {"spaces", std::move(spaces)}};
        }
        out << doc.dump(2) << '\n';
        return;
    }
    out << "fuzz seed=" << r.seed << " count=" << r.count << " max-n=" << r.max_n << '\n';
    for (const auto& s : r.suites)
        out << "suite " << s.name << ": cases=" << s.cases << " checks=" << s.checks
            << " failures=" << s.failures << '\n';
    if (r.first_failure) {
        const auto& c = *r.first_failure;
        out << "counterexample: suite=" << c.suite << " property=\"" << c.property
            << "\" case-seed=" << c.case_seed;
        if (!c.detail.empty())
            out << " detail=\"" << c.detail << '"';
        out << '\n';
        for (const auto& [name, s] : c.spaces)
            out << "space " << name << ":\n" << emit_document(s);
    }
    out << "result: " << (r.ok() ? "ok" : "FAILED") << '\n';
}

} // namespace detail

/// Runs the command line. `args` excludes the program name.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite pseudometric spaces with exact rational distances", "pmetric"};
    app.require_subcommand(1);
    std::string format = "plain";
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"plain", "structured"}));
    app.fallthrough();

    int code = ExitCode::ok;

    std::string file1, file2, set_spec, op = "closure", embedding_spec, center, label = "y0";
    std::string oracle = "reflection";
    std::uint64_t cap = default_brute_force_cap;
    FuzzOptions fuzz_opt;
    std::string suite = "all";

    auto* validate = app.add_subcommand("validate", "Check the pseudometric axioms");
    validate->add_option("FILE", file1)->required();

    auto* canonical = app.add_subcommand("canonical", "Re-emit a document in canonical form");
    canonical->add_option("FILE", file1)->required();

    auto* reflect = app.add_subcommand("reflect", "Metric reflection and projection table");
    reflect->add_option("FILE", file1)->required();

    auto* topology = app.add_subcommand("topology", "Topological operations on a subset");
    topology->add_option("FILE", file1)->required();
    topology->add_option("--set", set_spec, "Comma-separated point labels")->required();
    topology->add_option("--op", op)->check(
        CLI::IsMember({"closure", "interior", "boundary", "is-open", "is-closed", "is-complete"}));

    auto* isometric = app.add_subcommand("isometric", "Isometry between two metric spaces");
    isometric->add_option("FILE1", file1)->required();
    isometric->add_option("FILE2", file2)->required();

    auto* pseudo = app.add_subcommand("pseudoisometric", "Pseudoisometry between two spaces");
    pseudo->add_option("FILE1", file1)->required();
    pseudo->add_option("FILE2", file2)->required();
    pseudo->add_option("--oracle", oracle, "Search method")
        ->check(CLI::IsMember({"reflection", "brute-force"}));
    pseudo->add_option("--cap", cap, "Enumeration cap for brute force");

    auto* cec = app.add_subcommand("cec", "Superspace and CEC membership of an embedding");
    cec->add_option("SUBFILE", file1)->required();
    cec->add_option("SUPERFILE", file2)->required();
    cec->add_option("--embedding", embedding_spec, "a=a',... (default: equal labels)");

    auto* glue = app.add_subcommand("glue-zero", "Add a zero-distance copy of a point");
    glue->add_option("FILE", file1)->required();
    glue->add_option("--center", center)->required();
    glue->add_option("--label", label);

    auto* complete = app.add_subcommand("complete-glue", "Glue a metric superspace of the reflection");
    complete->add_option("YFILE", file1)->required();
    complete->add_option("YSTARFILE", file2)->required();
    complete->add_option("--embedding", embedding_spec,
                         "class=point,... from reflection labels (default: equal labels)");

    auto* fuzz = app.add_subcommand("fuzz", "Run the randomized invariant suites");
    fuzz->add_option("--seed", fuzz_opt.seed);
    fuzz->add_option("--count", fuzz_opt.count);
    fuzz->add_option("--max-n", fuzz_opt.max_n)->check(CLI::Range(1, 12));
    fuzz->add_option("--suite", suite)
        ->check(CLI::IsMember({"all", "core", "topology", "morphisms", "constructions"}));

    std::vector<std::string> argv_store{"pmetric"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitCode::ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return ExitCode::invalid_input;
    }

    bool const structured = format == "structured";

    try {
        if (validate->parsed()) {
            RawMatrix const raw = detail::load_raw(file1);
            Report const r = validate_pseudometric(raw);
            if (structured)
                out << detail::report_json(r, raw.labels).dump(2) << '\n';
            else if (r.ok())
                out << "ok\n";
            else
                for (const auto& v : r.violations)
                    out << "violation " << detail::describe(v, raw.labels) << '\n';
            code = r.ok() ? ExitCode::ok : ExitCode::negative;
        } else if (canonical->parsed()) {
            out << emit_document(detail::load_raw(file1));
        } else if (reflect->parsed()) {
            Space const s = detail::load_space(file1);
            Reflection const r = metric_reflection(s);
            if (structured) {
                out << json{{"quotient", to_json(r.quotient)}, {"projection", detail::map_json(r.projection)}}
                           .dump(2)
                    << '\n';
            } else {
                out << emit_document(r.quotient) << "projection:\n";
                detail::print_map(out, r.projection);
            }
        } else if (topology->parsed()) {
            Space const s = detail::load_space(file1);
            Subset const a = Subset::of_labels(s, detail::split(set_spec, ','));
            std::optional<bool> verdict;
            std::optional<Subset> result;
            if (op == "closure")
                result = closure(s, a);
            else if (op == "interior")
                result = interior(s, a);
            else if (op == "boundary")
                result = boundary(s, a);
            else if (op == "is-open")
                verdict = is_open(s, a);
            else if (op == "is-closed")
                verdict = is_closed(s, a);
            else
                verdict = is_complete_subset(s, a) && complete_via_boundary(s, a);
            if (result) {
                if (structured) {
                    json members = json::array();
                    for (std::size_t i : result->members())
                        members.push_back(s.label(i));
                    out << json{{"op", op}, {"result", std::move(members)}}.dump(2) << '\n';
                } else {
                    out << detail::set_text(s, *result) << '\n';
                }
            } else {
                if (structured)
                    out << json{{"op", op}, {"result", *verdict}}.dump(2) << '\n';
                else
                    out << (*verdict ? "true" : "false") << '\n';
                code = *verdict ? ExitCode::ok : ExitCode::negative;
            }
        } else if (isometric->parsed() || pseudo->parsed()) {
            Space const x = detail::load_space(file1);
            Space const y = detail::load_space(file2);
            std::optional<PointMap> witness;
            json extra = json::object();
            if (isometric->parsed()) {
                IsometrySearch const found = find_isometry(x, y);
                witness = found.map;
                extra = {{"nodes_expanded", found.stats.nodes_expanded},
                         {"signature_prunes", found.stats.signature_prunes},
                         {"distance_checks", found.stats.distance_checks}};
            } else if (oracle == "brute-force") {
                witness = brute_force_pseudoisometry(x, y, cap);
            } else {
                witness = are_pseudoisometric(x, y);
            }
            if (structured) {
                json doc{{"found", witness.has_value()}};
                doc["map"] = witness ? detail::map_json(*witness) : json(nullptr);
                if (!extra.empty())
                    doc["stats"] = extra;
                out << doc.dump(2) << '\n';
            } else if (witness) {
                detail::print_map(out, *witness);
            } else {
                out << "none\n";
            }
            code = witness ? ExitCode::ok : ExitCode::negative;
        } else if (cec->parsed()) {
            Space const sub = detail::load_space(file1);
            Space const super = detail::load_space(file2);
            Embedding const e{detail::embedding_from(sub, super, embedding_spec)};
            Report const sr = check_superspace(e);
            if (!sr.ok()) {
                err << "not a superspace: " << detail::describe(sr.violations.front(), sub.labels()) << '\n';
                return ExitCode::invalid_input;
            }
            bool const member = in_cec(e);
            bool const closed = is_closed(super, e.image());
            if (structured)
                out << json{{"superspace", true}, {"cec", member}, {"closed", closed}}.dump(2) << '\n';
            else
                out << "superspace: true\ncec: " << (member ? "true" : "false")
                    << "\nclosed: " << (closed ? "true" : "false") << '\n';
            code = member ? ExitCode::ok : ExitCode::negative;
        } else if (glue->parsed()) {
            Space const s = detail::load_space(file1);
            Embedding const e = glue_zero_point(s, s.index(center), label);
            if (structured)
                out << json{{"space", to_json(e.super())},
                            {"closed", is_closed(e.super(), e.image())},
                            {"cec", in_cec(e)}}
                           .dump(2)
                    << '\n';
            else
                out << emit_document(e.super());
        } else if (complete->parsed()) {
            Space const y = detail::load_space(file1);
            Space const ystar = detail::load_space(file2);
            Reflection const r = metric_reflection(y);
            Embedding const e =
                completion_glue(y, ystar, detail::embedding_from(r.quotient, ystar, embedding_spec));
            if (structured)
                out << json{{"space", to_json(e.super())},
                            {"closed", is_closed(e.super(), e.image())},
                            {"cec", in_cec(e)}}
                           .dump(2)
                    << '\n';
            else
                out << emit_document(e.super());
        } else if (fuzz->parsed()) {
            if (suite != "all")
                fuzz_opt.suites = {suite};
            FuzzReport const r = run_fuzz(fuzz_opt);
            detail::print_fuzz(out, r, structured);
            code = r.ok() ? ExitCode::ok : ExitCode::negative;
        }
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << '\n';
        return ExitCode::resource;
    } catch (const InputError& e) {
        err << "invalid input: " << e.what() << '\n';
        return ExitCode::invalid_input;
    } catch (const PreconditionError& e) {
        err << "invalid input: " << e.what() << '\n';
        return ExitCode::invalid_input;
    }
    return code;
}

} // namespace pmetric::cli
