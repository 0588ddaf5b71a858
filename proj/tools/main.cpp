// elemf: command-line front end.
//
// Output is one record per line, fields `key=value` separated by spaces;
// values containing spaces or quotes are written as JSON strings. --human
// prints one `key: value` line per field instead.
//
// Exit status: 0 success, 1 domain error (record on stderr), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "elemf/builder.hpp"
#include "elemf/cutelim.hpp"
#include "elemf/derivation_io.hpp"
#include "elemf/elemc.hpp"
#include "elemf/parse.hpp"
#include "elemf/reduction.hpp"
#include "elemf/stack.hpp"
#include "elemf/stdterms.hpp"

using namespace elemf;

namespace {

using Record = std::vector<std::pair<std::string, std::string>>;

bool g_human = false;

std::string quote(const std::string& v) {
    if (!v.empty() && v.find_first_of(" \t\n\"=") == std::string::npos) return v;
    return nlohmann::json(v).dump();
}

void emit(std::ostream& os, const Record& r) {
    if (g_human) {
        for (const auto& [k, v] : r) os << k << ": " << v << '\n';
        return;
    }
    bool first = true;
    for (const auto& [k, v] : r) {
        os << (first ? "" : " ") << k << '=' << quote(v);
        first = false;
    }
    os << '\n';
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string str(std::uint64_t v) { return std::to_string(v); }

std::vector<std::uint64_t> parse_args(const std::string& s) {
    std::vector<std::uint64_t> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        std::uint64_t v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || item[0] == '-')
            throw CLI::ValidationError("--args", "expected comma-separated naturals, got '" + s + "'");
        out.push_back(v);
    }
    return out;
}

void add_numeral(Record& r, const Term& t) {
    if (auto n = decode_numeral(t)) r.emplace_back("numeral", str(*n));
}

Record pass_fields(const PassReport& p) {
    return {{"pass", p.pass}, {"m", str(p.m)}, {"k", str(p.k)}, {"size", str(p.term_size)}, {"nodes", str(p.nodes)}};
}

/// x:Nat1 ⊢ t' : Nat0 with t' normal, from either that judgment or ⊢ t : Nat1 → Nat0.
Derivation soundeval_input(const Derivation& d, std::uint64_t fuel) {
    Derivation cur = d;
    if (d.ctx.empty() && type_eq(d.type(), arrow(nat1(), nat0()))) {
        std::string x = fresh_name("x", [&](const std::string& n) { return occurs_free(d.term(), n); });
        cur = build(b_app(b_closed(d), b_ax(x)), Context{{x, nat1()}});
    }
    if (is_normal(cur.term())) return cur;
    DerivReduceResult r = reduce_with_derivation(cur, fuel);
    if (!r.normal) throw Error("fuel-exhausted", "normalizing the subject took more than " + str(fuel) + " steps");
    return r.derivation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elementary second-order lambda calculus: typing, reduction, compilation, cut elimination"};
    app.require_subcommand(1);
    app.add_flag("--human", g_human, "One `key: value` line per field");
    const std::uint64_t env_fuel = default_fuel();

    std::string path, path_b, def_path, emit_kind = "term", args_text, std_name;
    std::uint64_t fuel = env_fuel, arg_n = 0;
    std::size_t budget = kDefaultNodeBudget;
    unsigned k = 1, l = 0, to_rank = 1;
    bool as_type = false, strict = false, eta = false, report = false, even_r = false;

    auto* parse_cmd = app.add_subcommand("parse", "Parse a term (.lam) or a type (.ty) and print it back");
    parse_cmd->add_option("file", path)->required()->check(CLI::ExistingFile);
    parse_cmd->add_flag("--type", as_type, "Read a type even without the .ty extension");

    auto* check_cmd = app.add_subcommand("check", "Check a derivation (.drv)");
    check_cmd->add_option("file", path)->required()->check(CLI::ExistingFile);

    auto* norm_cmd = app.add_subcommand("normalize", "Normalize a term (.lam)");
    norm_cmd->add_option("file", path)->required()->check(CLI::ExistingFile);
    norm_cmd->add_option("--fuel", fuel, "Step budget (default: ELEMF_FUEL or 10^7)");
    norm_cmd->add_flag("--strict", strict, "Use the strong call-by-value evaluator");

    auto* eq_cmd = app.add_subcommand("eqcheck", "Decide β- or βη-equality of two terms by normal forms");
    eq_cmd->add_option("a", path)->required()->check(CLI::ExistingFile);
    eq_cmd->add_option("b", path_b)->required()->check(CLI::ExistingFile);
    eq_cmd->add_flag("--eta", eta, "Compare up to η");
    eq_cmd->add_option("--fuel", fuel, "Step budget per side");

    auto* std_cmd = app.add_subcommand("std", "Print a standard term with its derivation");
    std_cmd->add_option("--name", std_name, "One of the standard term names")->required();
    std_cmd->add_option("--k", k, "Tower index");
    std_cmd->add_option("--l", l, "Second index (cu_iter)");
    std_cmd->add_option("--emit", emit_kind)->check(CLI::IsMember({"term", "derivation"}));

    auto* compile_cmd = app.add_subcommand("compile", "Compile an elementary definition (.elem)");
    compile_cmd->add_option("--def", def_path)->required()->check(CLI::ExistingFile);
    compile_cmd->add_option("--emit", emit_kind)->check(CLI::IsMember({"term", "derivation", "report"}));
    compile_cmd->add_flag("--even-r", even_r, "Round r up to an even value, as in the proof");

    auto* run_cmd = app.add_subcommand("run", "Compile a definition, apply it to numerals and decode");
    run_cmd->add_option("--def", def_path)->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--args", args_text, "Comma-separated naturals")->required();
    run_cmd->add_option("--fuel", fuel, "Step budget");
    run_cmd->add_flag("--even-r", even_r, "Round r up to an even value, as in the proof");

    auto* cut_cmd = app.add_subcommand("cutelim", "Lower the cut rank of a derivation");
    cut_cmd->add_option("--derivation", path)->required()->check(CLI::ExistingFile);
    cut_cmd->add_option("--to-rank", to_rank, "Target cut rank")->check(CLI::PositiveNumber);
    cut_cmd->add_flag("--report", report, "One record per pass");
    cut_cmd->add_option("--budget", budget, "Derivation node budget");

    auto* sound_cmd = app.add_subcommand("soundeval", "Evaluate through cut elimination and quasinormalization");
    sound_cmd->add_option("--derivation", path)->required()->check(CLI::ExistingFile);
    sound_cmd->add_option("--arg", arg_n, "Input numeral")->required();
    sound_cmd->add_option("--fuel", fuel, "Step budget for normalizing the subject and for the cross-check");
    sound_cmd->add_option("--budget", budget, "Derivation node budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return with_big_stack([&]() -> int {
            std::ostream& out = std::cout;
            if (parse_cmd->parsed()) {
                const std::string text = slurp(path);
                if (as_type || path.ends_with(".ty")) {
                    Type t = parse_type(text);
                    emit(out, {{"type", to_string(t)}, {"closed", str(is_closed(t))}, {"flat", str(is_flat(t))}});
                } else {
                    Term t = parse_term(text);
                    Record r{{"term", to_string(t)}, {"size", str(size(t))}, {"normal", str(is_normal(t))}};
                    add_numeral(r, t);
                    emit(out, r);
                }
            } else if (check_cmd->parsed()) {
                Derivation d = parse_derivation(slurp(path));
                CheckResult c = check_derivation(d);
                if (!c) {
                    emit(std::cerr, {{"error", c.code}, {"path", c.path}, {"message", c.message}});
                    return 1;
                }
                Record r{{"ok", "1"}, {"term", to_string(d.term())}, {"type", to_string(d.type())},
                         {"height", str(height(d.root))}, {"nodes", str(node_count(d.root))}};
                bool low = level_at_most_one(d.type());
                for (const auto& [name, t] : d.ctx) low = low && level_at_most_one(t);
                if (low) {
                    try {
                        RankedDerivation rd = annotate(d);
                        r.emplace_back("m", str(rd.m));
                        r.emplace_back("k", str(rd.k));
                    } catch (const Error&) {
                        // level-2 types inside: no ranked annotation
                    }
                }
                emit(out, r);
            } else if (norm_cmd->parsed()) {
                Term t = parse_term(slurp(path));
                NormalizeResult res = strict ? normalize_strict(t, fuel) : normalize(t, fuel);
                if (!res.normal)
                    throw Error(res.budget_exceeded ? "budget-exceeded" : "fuel-exhausted",
                                "no normal form within " + str(fuel) + " steps");
                Record r{{"normal", "1"}, {"steps", str(res.steps)}};
                add_numeral(r, res.term);
                r.emplace_back("term", to_string(res.term));
                emit(out, r);
            } else if (eq_cmd->parsed()) {
                Term a = parse_term(slurp(path));
                Term b = parse_term(slurp(path_b));
                bool eq = eta ? beta_eta_eq(a, b, fuel) : beta_eq(a, b, fuel);
                emit(out, {{"equal", str(eq)}, {"relation", eta ? "beta-eta" : "beta"}});
            } else if (std_cmd->parsed()) {
                NamedTerm t = std_term(std_name, k, l);
                if (emit_kind == "derivation") {
                    out << print_derivation(t.derivation) << '\n';
                } else {
                    emit(out, {{"name", t.name}, {"type", to_string(t.derivation.type())},
                               {"size", str(size(t.term))}, {"term", to_string(t.term)}});
                }
            } else if (compile_cmd->parsed()) {
                ElemExpr e = parse_elem(slurp(def_path));
                TopCompiled c = compile_top(e, TopOptions{even_r});
                if (emit_kind == "derivation") {
                    out << print_derivation(c.derivation) << '\n';
                } else if (emit_kind == "report") {
                    std::string etas;
                    for (const auto& t : c.lemma.etas) etas += (etas.empty() ? "" : ",") + to_string(t);
                    emit(out, {{"def", to_string(e)},
                               {"arity", str(c.arity)},
                               {"k", str(c.lemma.k)},
                               {"l", str(c.lemma.l)},
                               {"r", str(c.r)},
                               {"growth", str(growth_bound(e))},
                               {"etas", etas},
                               {"size", str(size(c.term))},
                               {"type", to_string(c.derivation.type())}});
                } else {
                    out << to_string(c.term) << '\n';
                }
            } else if (run_cmd->parsed()) {
                std::vector<std::uint64_t> args = parse_args(args_text);
                ElemExpr e = parse_elem(slurp(def_path));
                if (args.size() != arity(e))
                    throw Error("arity", "definition takes " + str(arity(e)) + " argument(s), got " + str(args.size()));
                TopCompiled c = compile_top(e, TopOptions{even_r});
                out << run_compiled(c, args, fuel) << '\n';
            } else if (cut_cmd->parsed()) {
                Derivation d = parse_derivation(slurp(path));
                if (CheckResult c = check_derivation(d); !c) throw Error(c.code, c.message + " at " + c.path);
                RankedDerivation rd = annotate(d);
                std::vector<PassReport> passes;
                if (to_rank == 1 && d.ctx.empty()) {
                    rd = cut_elim_to_rank1(rd, budget, &passes);
                } else {
                    passes.push_back(PassReport{"input", rd.m, rd.k, size(rd.d.term()), tree_size(rd.d.root)});
                    while (rd.k > to_rank) {
                        rd = reduce_rank(rd, budget);
                        passes.push_back(
                            PassReport{"reduce_rank", rd.m, rd.k, size(rd.d.term()), tree_size(rd.d.root)});
                    }
                }
                if (report)
                    for (const auto& p : passes) emit(out, pass_fields(p));
                Record r{{"m", str(rd.m)}, {"k", str(rd.k)}, {"term", to_string(rd.d.term())}};
                emit(out, r);
            } else if (sound_cmd->parsed()) {
                Derivation d = soundeval_input(parse_derivation(slurp(path)), fuel);
                SoundEval s = evaluate_via_cutelim(d, arg_n, budget, fuel);
                for (const auto& p : s.passes) emit(out, pass_fields(p));
                emit(out, {{"value", str(s.value)},
                           {"direct", str(s.direct)},
                           {"occurrences", str(s.occurrences)},
                           {"c", str(s.c)},
                           {"cut_rank", str(s.cut_rank)},
                           {"height", str(s.height)},
                           {"height_bound", str(s.height_bound)},
                           {"final_height", str(s.final_height)},
                           {"peak", str(s.peak)}});
            }
            return 0;
        });
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        emit(std::cerr, {{"error", e.code()}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        emit(std::cerr, {{"error", "internal"}, {"message", e.what()}});
        return 1;
    }
}
