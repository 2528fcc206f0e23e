// Command-line front end: expression evaluation, verification batteries, and
// the scripted experiment suites.
//
// Exit codes: 0 success, 1 value mismatch / failed verification, 2 usage or
// parse errors.  LIFTCOC_DEPTH overrides the default truncation depth.

#include "liftcoc/errors.hpp"
#include "liftcoc/harness.hpp"
#include "liftcoc/parser.hpp"
#include "liftcoc/random_gen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

using namespace liftcoc;

namespace {

struct GlobalOptions {
    int depth = 0; // 0: derive from inputs / env
    uint64_t seed = 1;
    int jobs = 1;
    int nvars = 1;
    bool table = false;
};

int env_depth() {
    const char *v = std::getenv("LIFTCOC_DEPTH");
    if (!v)
        return 0;
    int d = std::atoi(v);
    return d >= 1 ? d : 0;
}

// Split on commas that are not nested in brackets or parens.
std::vector<std::string> split_args(const std::string &joined) {
    std::vector<std::string> out;
    std::string cur;
    int nest = 0;
    for (char c : joined) {
        if (c == '(' || c == '[')
            ++nest;
        if (c == ')' || c == ']')
            --nest;
        if (c == ',' && nest == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

int max_positive_exponent(const AugmentedOp &op) {
    int m = 0;
    auto scan = [&m](const PsiSymbol &s) {
        for (const auto &[mono, c] : s.terms())
            for (int16_t e : mono.e)
                m = std::max(m, static_cast<int>(e));
    };
    scan(op.id_part());
    for (const auto &[idx, s] : op.finite().entries())
        scan(s);
    return m;
}

void emit_reports(const std::vector<ExperimentReport> &reports, const GlobalOptions &g) {
    if (g.table)
        std::cout << reports_table(reports);
    else
        std::cout << reports_json(reports) << "\n";
}

int reports_exit(const std::vector<ExperimentReport> &reports) {
    return reports_all_pass(reports) ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"exact evaluator for trace cocycles on matrix symbol algebras"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalOptions g;
    app.add_option("--depth", g.depth, "truncation depth (default: derived from inputs)");
    app.add_option("--seed", g.seed, "seed for randomized batteries");
    app.add_option("--jobs", g.jobs, "parallel evaluation width")->check(CLI::PositiveNumber);
    app.add_option("--n", g.nvars, "number of variables")->check(CLI::Range(1, kMaxVars));
    bool json_flag = false;
    app.add_flag("--table", g.table, "human-readable table output");
    app.add_flag("--json", json_flag, "JSON output (default)");

    // residue <expr>
    auto *cmd_residue = app.add_subcommand("residue", "residue of a symbol expression");
    std::string residue_expr;
    cmd_residue->add_option("expr", residue_expr, "operator expression")->required();

    // eval --k --s --args <expr,...> [--lambda q] [--formula f]
    auto *cmd_eval = app.add_subcommand("eval", "evaluate a cocycle on an argument tuple");
    int eval_k = 2, eval_s = 1;
    std::string eval_args, eval_lambda, eval_formula = "auto";
    cmd_eval->add_option("--k", eval_k, "number of derivations")->required();
    cmd_eval->add_option("--s", eval_s, "family index (arity k+2s-1)")->required();
    cmd_eval->add_option("--args", eval_args, "comma-separated operator expressions")->required();
    cmd_eval->add_option("--lambda", eval_lambda, "rational value bound to the parameter L");
    cmd_eval->add_option("--formula", eval_formula,
                         "auto|pair3|pair-higher|interval|even-noq|even-circle");

    // verify cocycle / verify algebra
    auto *cmd_verify = app.add_subcommand("verify", "randomized verification batteries");
    cmd_verify->require_subcommand(1);
    auto *cmd_vc = cmd_verify->add_subcommand("cocycle", "coboundary of the cocycle vanishes");
    int vc_k = 2, vc_s = 1, vc_trials = 20, vc_gl = 2, vc_maxdeg = 2;
    std::string vc_formula = "auto";
    cmd_vc->add_option("--k", vc_k)->required();
    cmd_vc->add_option("--s", vc_s)->required();
    cmd_vc->add_option("--trials", vc_trials);
    cmd_vc->add_option("--gl", vc_gl, "matrix window");
    cmd_vc->add_option("--maxdeg", vc_maxdeg, "symbol exponent bound");
    cmd_vc->add_option("--formula", vc_formula);
    auto *cmd_va = cmd_verify->add_subcommand("algebra", "trace and derivation identities");
    int va_trials = 100;
    cmd_va->add_option("--trials", va_trials);

    // cycles --gl M --degree P
    auto *cmd_cycles = app.add_subcommand("cycles", "basis of matrix cycles in a window");
    int cy_gl = 2, cy_degree = 3;
    std::size_t cy_cap = 2000;
    cmd_cycles->add_option("--gl", cy_gl)->required();
    cmd_cycles->add_option("--degree", cy_degree)->required();
    cmd_cycles->add_option("--cap", cy_cap, "wedge dimension cap");

    // reproduce <suite>
    auto *cmd_repro = app.add_subcommand("reproduce", "run a scripted experiment suite");
    std::string suite;
    std::string lambdas_arg = "-2,-1,0,1,2,3";
    int repro_n = 1;
    bool lambda_fit = false;
    cmd_repro->add_option("suite", suite, "4.3.4 | 4.3.5 | 4.4")->required();
    cmd_repro->add_option("--lambdas", lambdas_arg, "comma-separated rationals (suite 4.3.5)");
    cmd_repro->add_option("--n", repro_n, "variable count (suite 4.4; n=3 is slow)")
        ->check(CLI::Range(1, 3));
    cmd_repro->add_flag("--lambda-fit", lambda_fit,
                        "include the lambda-polynomial interpolation (suite 4.4, n >= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        auto formula_of = [](const std::string &name) {
            if (name == "auto")
                return Formula::Auto;
            if (name == "pair3")
                return Formula::Pair3;
            if (name == "pair-higher")
                return Formula::PairHigher;
            if (name == "interval")
                return Formula::Interval;
            if (name == "even-noq")
                return Formula::EvenNoQ;
            if (name == "even-circle")
                return Formula::EvenCircle;
            throw CLI::ValidationError("--formula", "unknown formula name: " + name);
        };

        if (cmd_residue->parsed()) {
            int depth = g.depth ? g.depth : std::max(env_depth(), 1);
            if (!g.depth && !env_depth()) {
                // parse once at a generous depth to read off the exponents
                AugmentedOp probe = parse_operator(residue_expr, g.nvars, {16, 2});
                depth = max_positive_exponent(probe) + 2;
            }
            auto compute = [&](int d) {
                AugmentedOp op = parse_operator(residue_expr, g.nvars, {d, 2});
                if (!op.finite().is_zero())
                    throw ParseError("residue expects a pure symbol expression (no E[i,j])", 0);
                return residue(op.id_part());
            };
            StabilityResult sr = stability_check(compute, {depth, 2});
            if (g.table) {
                std::cout << rat_str(sr.value) << "\n";
            } else {
                nlohmann::ordered_json j;
                j["residue"] = rat_str(sr.value);
                j["depth"] = depth;
                j["stable"] = sr.stable;
                std::cout << j.dump() << "\n";
            }
            return sr.stable ? 0 : 1;
        }

        if (cmd_eval->parsed()) {
            std::optional<Rat> lambda;
            if (!eval_lambda.empty())
                lambda = rat_parse(eval_lambda);
            int base_depth = g.depth ? g.depth : env_depth();
            auto parse_tuple = [&](int d) {
                std::vector<AugmentedOp> args;
                for (const auto &text : split_args(eval_args))
                    args.push_back(parse_operator(text, g.nvars, {d, 2}, lambda));
                return args;
            };
            if (!base_depth) {
                auto probe = parse_tuple(16);
                int maxexp = 0;
                for (const auto &a : probe)
                    maxexp = std::max(maxexp, max_positive_exponent(a));
                base_depth = maxexp + eval_k + 2 * eval_s + 2;
            }
            EvalOptions ev{g.jobs};
            Formula f = formula_of(eval_formula);
            auto compute = [&](int d) {
                CocycleSpec spec = standard_spec(g.nvars, eval_k, eval_s, {d, 2});
                auto args = parse_tuple(d);
                return psi(spec, args, f, ev);
            };
            StabilityResult sr = stability_check(compute, {base_depth, 2});
            if (g.table) {
                std::cout << rat_str(sr.value) << "\n";
            } else {
                nlohmann::ordered_json j;
                j["psi"] = rat_str(sr.value);
                j["k"] = eval_k;
                j["s"] = eval_s;
                j["depth"] = base_depth;
                j["stable"] = sr.stable;
                std::cout << j.dump() << "\n";
            }
            return sr.stable ? 0 : 1;
        }

        if (cmd_vc->parsed()) {
            int depth = g.depth ? g.depth : (env_depth() ? env_depth() : 8);
            CocycleVerifyOptions opts;
            opts.trials = vc_trials;
            opts.seed = g.seed;
            opts.window = vc_gl;
            opts.maxdeg = vc_maxdeg;
            opts.base = {depth, 2, g.jobs};
            int nv = std::max(g.nvars, (vc_k + 1) / 2);
            auto reports = verify_cocycle(nv, vc_k, vc_s, formula_of(vc_formula), opts);
            emit_reports(reports, g);
            return reports_exit(reports);
        }

        if (cmd_va->parsed()) {
            int depth = g.depth ? g.depth : (env_depth() ? env_depth() : 8);
            auto reports = verify_algebra(g.nvars, va_trials, g.seed, {depth, 2, g.jobs});
            emit_reports(reports, g);
            return reports_exit(reports);
        }

        if (cmd_cycles->parsed()) {
            int depth = g.depth ? g.depth : (env_depth() ? env_depth() : 4);
            ChainSpace space(cy_gl, {PsiSymbol::constant(g.nvars, depth, Rat(1))});
            auto cycles = find_cycles(space, cy_degree, cy_cap);
            if (g.table) {
                for (std::size_t i = 0; i < cycles.size(); ++i) {
                    std::cout << "cycle " << i << ":";
                    for (const auto &[word, coeff] : cycles[i].terms()) {
                        std::cout << "  " << rat_str(coeff) << " *";
                        for (int b : word)
                            std::cout << " [" << print_operator(space.basis_op(b)) << "]";
                    }
                    std::cout << "\n";
                }
            } else {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto &c : cycles) {
                    nlohmann::ordered_json jc = nlohmann::ordered_json::array();
                    for (const auto &[word, coeff] : c.terms()) {
                        nlohmann::ordered_json jt;
                        jt["coeff"] = rat_str(coeff);
                        nlohmann::ordered_json jw = nlohmann::ordered_json::array();
                        for (int b : word)
                            jw.push_back(print_operator(space.basis_op(b)));
                        jt["wedge"] = jw;
                        jc.push_back(std::move(jt));
                    }
                    arr.push_back(std::move(jc));
                }
                std::cout << arr.dump(2) << "\n";
            }
            return 0;
        }

        if (cmd_repro->parsed()) {
            int depth = g.depth ? g.depth : (env_depth() ? env_depth() : 8);
            HarnessOptions hopts{depth, 2, g.jobs};
            std::vector<ExperimentReport> reports;
            if (suite == "4.3.4") {
                reports = run_suite_434(hopts);
            } else if (suite == "4.3.5") {
                std::vector<Rat> lambdas;
                for (const auto &s : split_args(lambdas_arg))
                    lambdas.push_back(rat_parse(s));
                reports = run_suite_435(lambdas, hopts);
            } else if (suite == "4.4") {
                Suite44Options o;
                o.base = hopts;
                o.lambda_fit = repro_n == 1 || lambda_fit;
                reports = run_suite_44(repro_n, o);
            } else {
                std::cerr << "unknown suite: " << suite << " (expected 4.3.4, 4.3.5 or 4.4)\n";
                return 2;
            }
            emit_reports(reports, g);
            return reports_exit(reports);
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const IndexOutOfRangeError &e) {
        std::cerr << "index error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
