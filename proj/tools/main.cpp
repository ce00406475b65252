// Command-line front end: exact expression evaluation over duplex
// arithmetic, the propositional engines, fugacious-sequence probes, the
// equidistribution demo and the irrationality-measure checker.
//
// Exit status: 0 definite success, 2 Unknown (the honest third state),
// 1 error. --json switches every subcommand to a single-object output.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "constructive/constants.hpp"
#include "constructive/expr.hpp"
#include "constructive/logic.hpp"
#include "constructive/real.hpp"
#include "constructive/sequences.hpp"

using json = nlohmann::ordered_json;
using namespace constructive;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

long long default_digits() {
    if (const char* env = std::getenv("DUPLEX_DIGITS")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return v;
    }
    return 10;
}

Duplex named_constant(const std::string& name) {
    if (name == "pi") return const_pi();
    if (name == "e") return const_e();
    if (name == "sqrt2") return const_sqrt(Rational(2));
    if (name == "zeta3") return const_zeta3();
    throw DomainError("unknown constant '" + name + "' (try pi, e, sqrt2, zeta3)");
}

std::string error_bound_text(long long digits) {
    return "1e-" + std::to_string(digits);
}

json countermodel_json(const logic::KripkeModel& m) {
    json order = json::array();
    for (std::size_t i = 0; i < m.worlds; ++i)
        for (std::size_t j = 0; j < m.worlds; ++j)
            if (i != j && m.leq[i][j]) order.push_back({i, j});
    json valuation = json::object();
    for (const auto& [name, mask] : m.valuation) {
        json worlds = json::array();
        for (std::size_t w = 0; w < m.worlds; ++w)
            if (mask[w]) worlds.push_back(w);
        valuation[name] = worlds;
    }
    return json{{"worlds", m.worlds}, {"order", order}, {"valuation", valuation}};
}

struct Options {
    bool use_json = false;

    std::string eval_expr_text;
    long long eval_digits = 0;
    long long eval_budget = 64;

    std::string digits_constant;
    long long digits_digits = 0;

    std::string locate_expr;
    std::string locate_a, locate_b;
    long long locate_budget = 64;

    std::string logic_formula;
    bool logic_classical = false;
    bool logic_intuitionistic = false;
    bool logic_both = false;
    bool logic_countermodel = false;
    std::string expand_formula;

    std::uint64_t fugace_upto = 10000;

    std::string equi_alpha;
    std::uint64_t equi_n = 0;

    long long measure_exponent = 42;
    std::string measure_max_q = "1000000";
};

int run_eval(const Options& o) {
    auto expr = parse_expr(o.eval_expr_text);
    auto result = eval_expr(expr, o.eval_digits, o.eval_budget);
    if (auto* unknown = std::get_if<EvalUnknown>(&result)) {
        if (o.use_json) {
            json out{{"command", "eval"},
                     {"expr", o.eval_expr_text},
                     {"status", "unknown"},
                     {"subexpression", "(" + unknown->subexpression + ")"},
                     {"budget", unknown->budget}};
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "Unknown: subexpression (" << unknown->subexpression
                      << ") not certified apart from zero (budget "
                      << unknown->budget << ")\n";
        }
        return kExitUnknown;
    }
    const auto& ok = std::get<EvalOk>(result);
    if (o.use_json) {
        json out{{"command", "eval"},
                 {"expr", o.eval_expr_text},
                 {"status", "ok"},
                 {"value", ok.decimal},
                 {"error_bound", error_bound_text(ok.digits)}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << ok.decimal << " ± " << error_bound_text(ok.digits) << "\n";
    }
    return kExitOk;
}

int run_digits(const Options& o) {
    Duplex x = named_constant(o.digits_constant);
    std::string text = to_decimal(x, o.digits_digits);
    if (o.use_json) {
        json out{{"command", "digits"},
                 {"constant", o.digits_constant},
                 {"status", "ok"},
                 {"value", text},
                 {"error_bound", error_bound_text(o.digits_digits)}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << text << " ± " << error_bound_text(o.digits_digits) << "\n";
    }
    return kExitOk;
}

int run_locate(const Options& o) {
    Rational a = Rational::parse(o.locate_a);
    Rational b = Rational::parse(o.locate_b);
    auto expr = parse_expr(o.locate_expr);
    std::string offending;
    auto x = fold_expr(expr, o.locate_budget, &offending);
    if (!x) {
        if (o.use_json) {
            json out{{"command", "locate"},
                     {"expr", o.locate_expr},
                     {"status", "unknown"},
                     {"subexpression", "(" + offending + ")"},
                     {"budget", o.locate_budget}};
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "Unknown: subexpression (" << offending
                      << ") not certified apart from zero (budget "
                      << o.locate_budget << ")\n";
        }
        return kExitUnknown;
    }
    LocateClaim claim = locate(*x, a, b);
    std::string text = claim.kind == LocateClaim::Kind::above_lower
                           ? "x > " + claim.bound.str()
                           : "x < " + claim.bound.str();
    if (o.use_json) {
        json out{{"command", "locate"},
                 {"expr", o.locate_expr},
                 {"a", a.str()},
                 {"b", b.str()},
                 {"status", "ok"},
                 {"claim", text}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "claim: " << text << "\n";
    }
    return kExitOk;
}

int run_logic_check(const Options& o) {
    auto f = logic::parse_formula(o.logic_formula);
    bool both = o.logic_both || (!o.logic_classical && !o.logic_intuitionistic);
    bool do_classical = both || o.logic_classical;
    bool do_intuitionistic = both || o.logic_intuitionistic;

    json out{{"command", "logic check"}, {"formula", o.logic_formula}, {"status", "ok"}};
    std::string text;
    if (do_classical) {
        bool v = logic::classical_valid(f);
        text += std::string("classical: ") + (v ? "valid" : "invalid") + "\n";
        out["classical"] = v ? "valid" : "invalid";
    }
    if (do_intuitionistic) {
        auto r = logic::intuitionistic_valid(f, o.logic_countermodel);
        text += std::string("intuitionistic: ") + (r.valid ? "valid" : "invalid") + "\n";
        out["intuitionistic"] = r.valid ? "valid" : "invalid";
        if (r.countermodel) {
            text += logic::format_countermodel(*r.countermodel);
            out["countermodel"] = countermodel_json(*r.countermodel);
        }
    }
    if (o.use_json)
        std::cout << out.dump() << "\n";
    else
        std::cout << text;
    return kExitOk;
}

int run_logic_expand(const Options& o) {
    auto f = logic::parse_formula(o.expand_formula);
    std::string expanded = logic::print_formula(logic::expand_classical_abbreviations(f));
    if (o.use_json) {
        json out{{"command", "logic expand"},
                 {"formula", o.expand_formula},
                 {"status", "ok"},
                 {"expanded", expanded}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << expanded << "\n";
    }
    return kExitOk;
}

int run_fugace(const Options& o) {
    auto s = goldbach_indicator();
    ProbeStatus st = s.probe(o.fugace_upto);
    if (o.use_json) {
        json out{{"command", "fugace goldbach"}, {"upto", o.fugace_upto}, {"status", "ok"}};
        if (st.kind == ProbeStatus::Kind::all_zero_so_far) {
            out["result"] = "all-zero-so-far";
            out["probed_through"] = st.probed_through;
        } else {
            out["result"] = "nonzero-found";
            out["index"] = st.nonzero_index;
            out["value"] = st.nonzero_value;
        }
        std::cout << out.dump() << "\n";
    } else {
        if (st.kind == ProbeStatus::Kind::all_zero_so_far)
            std::cout << "goldbach indicator: all zero so far (0.."
                      << st.probed_through << ")\n";
        else
            std::cout << "goldbach indicator: nonzero at index " << st.nonzero_index
                      << " (value " << st.nonzero_value << ")\n";
    }
    return kExitOk;
}

int run_equi(const Options& o) {
    Rational alpha = Rational::parse(o.equi_alpha);
    Rational d = power_fraction_discrepancy(alpha, o.equi_n);
    std::string decimal = to_decimal(Duplex::from_rational(d), 10);
    if (o.use_json) {
        json out{{"command", "equi"},
                 {"alpha", alpha.str()},
                 {"n", o.equi_n},
                 {"status", "ok"},
                 {"discrepancy", d.str()},
                 {"decimal", decimal}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "D*_" << o.equi_n << "(" << alpha.str() << ") = " << d.str()
                  << " ~= " << decimal << "\n";
    }
    return kExitOk;
}

int run_measure(const Options& o) {
    Int q_max{o.measure_max_q};
    auto report = irrationality_check_pi(o.measure_exponent, q_max);
    if (o.use_json) {
        json entries = json::array();
        for (const auto& e : report.entries) {
            const char* verdict = e.verdict == MeasureEntry::Verdict::pass   ? "PASS"
                                  : e.verdict == MeasureEntry::Verdict::fail ? "FAIL"
                                                                             : "UNKNOWN";
            entries.push_back({{"p", e.conv.p.str()},
                               {"q", e.conv.q.str()},
                               {"margin", e.margin.str()},
                               {"verdict", verdict}});
        }
        json out{{"command", "measure pi"},
                 {"exponent", report.exponent},
                 {"max_q", report.q_max.str()},
                 {"status", report.unknown() > 0 ? "unknown" : "ok"},
                 {"entries", entries},
                 {"pass", report.passed()},
                 {"fail", report.failed()},
                 {"unknown", report.unknown()}};
        std::cout << out.dump() << "\n";
    } else {
        std::cout << format_report(report);
    }
    return report.unknown() > 0 ? kExitUnknown : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact constructive-real arithmetic and decision demos"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    o.eval_digits = default_digits();
    o.digits_digits = o.eval_digits;
    app.add_flag("--json", o.use_json, "machine-readable single-object output");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression to N digits");
    eval_cmd->fallthrough();
    eval_cmd->add_option("expr", o.eval_expr_text, "expression")->required();
    eval_cmd->add_option("--digits", o.eval_digits, "guaranteed fractional digits");
    eval_cmd->add_option("--budget", o.eval_budget, "apartness budget per division");

    auto* digits_cmd = app.add_subcommand("digits", "print digits of a named constant");
    digits_cmd->fallthrough();
    digits_cmd->add_option("constant", o.digits_constant, "pi | e | sqrt2 | zeta3")->required();
    digits_cmd->add_option("--digits", o.digits_digits, "guaranteed fractional digits");

    auto* locate_cmd = app.add_subcommand("locate", "decide x > a or x < b for a < b");
    locate_cmd->fallthrough();
    locate_cmd->add_option("expr", o.locate_expr, "expression")->required();
    locate_cmd->add_option("--a", o.locate_a, "lower rational")->required();
    locate_cmd->add_option("--b", o.locate_b, "upper rational")->required();
    locate_cmd->add_option("--budget", o.locate_budget, "apartness budget per division");

    auto* logic_cmd = app.add_subcommand("logic", "propositional engines");
    logic_cmd->require_subcommand(1);
    logic_cmd->fallthrough();
    auto* check_cmd = logic_cmd->add_subcommand("check", "classical and intuitionistic validity");
    check_cmd->fallthrough();
    check_cmd->add_option("formula", o.logic_formula, "formula")->required();
    check_cmd->add_flag("--classical", o.logic_classical, "classical verdict only");
    check_cmd->add_flag("--intuitionistic", o.logic_intuitionistic, "intuitionistic verdict only");
    check_cmd->add_flag("--both", o.logic_both, "both verdicts (default)");
    check_cmd->add_flag("--countermodel", o.logic_countermodel, "emit a Kripke countermodel if found");
    auto* expand_cmd = logic_cmd->add_subcommand("expand", "rewrite | and -> into the ~/& abbreviations");
    expand_cmd->fallthrough();
    expand_cmd->add_option("formula", o.expand_formula, "formula")->required();

    auto* fugace_cmd = app.add_subcommand("fugace", "probe a fugacious sequence");
    fugace_cmd->require_subcommand(1);
    fugace_cmd->fallthrough();
    auto* goldbach_cmd = fugace_cmd->add_subcommand("goldbach", "indicator of 2n+4 failing a two-prime split");
    goldbach_cmd->fallthrough();
    goldbach_cmd->add_option("--upto", o.fugace_upto, "probe indices 0..upto");

    auto* equi_cmd = app.add_subcommand("equi", "star discrepancy of frac(alpha^n)");
    equi_cmd->fallthrough();
    equi_cmd->add_option("--alpha", o.equi_alpha, "rational alpha > 1 (p/q)")->required();
    equi_cmd->add_option("--n", o.equi_n, "number of points")->required();

    auto* measure_cmd = app.add_subcommand("measure", "irrationality measure checks");
    measure_cmd->require_subcommand(1);
    measure_cmd->fallthrough();
    auto* measure_pi = measure_cmd->add_subcommand("pi", "certify |pi - p/q| > q^-exponent on convergents");
    measure_pi->fallthrough();
    measure_pi->add_option("--exponent", o.measure_exponent, "measure exponent");
    measure_pi->add_option("--max-q", o.measure_max_q, "largest denominator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // --help prints usage and exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*eval_cmd) return run_eval(o);
        if (*digits_cmd) return run_digits(o);
        if (*locate_cmd) return run_locate(o);
        if (*check_cmd) return run_logic_check(o);
        if (*expand_cmd) return run_logic_expand(o);
        if (*goldbach_cmd) return run_fugace(o);
        if (*equi_cmd) return run_equi(o);
        if (*measure_pi) return run_measure(o);
        std::cerr << "error: no subcommand\n";
        return kExitError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " at position " << e.position << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
}
