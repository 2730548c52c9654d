// comaut: operations, state-complexity measurement and reproduction harness
// for commutative regular languages in grid normal form.

#include <cctype>
#include <cstdint>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "comaut/dfa.hpp"
#include "comaut/expr.hpp"
#include "comaut/fuzz.hpp"
#include "comaut/grid.hpp"
#include "comaut/json_io.hpp"
#include "comaut/witnesses.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

void validate_alphabet(const std::string& alphabet) {
    if (alphabet.empty()) throw CLI::ValidationError("--alphabet must not be empty");
    std::set<char> seen;
    for (char c : alphabet) {
        if (!std::islower(static_cast<unsigned char>(c)))
            throw CLI::ValidationError("--alphabet letters must be lowercase characters");
        if (!seen.insert(c).second)
            throw CLI::ValidationError("--alphabet letters must be distinct");
    }
}

std::string format_vector(const std::vector<std::uint32_t>& v) {
    std::string s = "(";
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) s += ',';
        s += std::to_string(v[j]);
    }
    return s + ")";
}

comaut::GridAutomaton eval_or_exit(const std::string& text, const std::string& alphabet) {
    try {
        return comaut::eval(comaut::parse(text, alphabet), alphabet.size());
    } catch (const comaut::LangParseError& e) {
        std::cerr << "error: " << e.what() << " at position " << e.pos << "\n";
        std::exit(kExitUsage);
    } catch (const comaut::LangEvalError& e) {
        std::cerr << "error: " << e.what() << " at position " << e.pos << "\n";
        std::exit(kExitUsage);
    }
}

int cmd_eval(const std::string& expr_text, const std::string& alphabet, bool as_json,
             bool as_dot) {
    comaut::GridAutomaton g = eval_or_exit(expr_text, alphabet);
    comaut::IndexPeriodVectors v = comaut::grid_index_period(g);
    std::uint64_t sc = comaut::state_complexity(g);
    bool group = comaut::grid_is_group(g);
    bool aperiodic = comaut::grid_is_aperiodic(g);
    std::vector<bool> occurs = comaut::grid_alphabet(g);
    std::string used;
    for (std::size_t j = 0; j < occurs.size(); ++j)
        if (occurs[j]) used += alphabet[j];

    if (as_dot) {
        std::cout << comaut::dfa_to_dot(comaut::dfa_from_grid(comaut::grid_canonicalize(g)),
                                        alphabet);
        return kExitOk;
    }
    if (as_json) {
        nlohmann::json out;
        out["sc"] = sc;
        out["index"] = v.index;
        out["period"] = v.period;
        out["group"] = group;
        out["aperiodic"] = aperiodic;
        out["alphabet"] = used;
        out["grid"] = comaut::grid_to_json(comaut::grid_canonicalize(g), alphabet);
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "sc=" << sc << " index=" << format_vector(v.index)
              << " period=" << format_vector(v.period) << " group=" << (group ? "yes" : "no")
              << " aperiodic=" << (aperiodic ? "yes" : "no") << " alphabet=" << used << "\n";
    return kExitOk;
}

int cmd_equiv(const std::string& lhs, const std::string& rhs, const std::string& alphabet) {
    comaut::GridAutomaton a = eval_or_exit(lhs, alphabet);
    comaut::GridAutomaton b = eval_or_exit(rhs, alphabet);
    bool same = comaut::dfa_equivalent(comaut::dfa_from_grid(a), comaut::dfa_from_grid(b));
    std::cout << (same ? "equivalent" : "not equivalent") << "\n";
    return same ? kExitOk : kExitVerificationFailure;
}

int cmd_report(const std::string& suite, bool as_json, bool as_csv) {
    std::vector<comaut::WitnessCase> cases;
    if (suite == "default")
        cases = comaut::default_suite();
    else if (suite == "group")
        cases = comaut::group_suite();
    else if (suite == "aperiodic")
        cases = comaut::aperiodic_suite();
    auto reports = comaut::run_report(cases);
    if (as_json)
        std::cout << comaut::render_json(reports).dump(2) << "\n";
    else if (as_csv)
        std::cout << comaut::render_csv(reports);
    else
        std::cout << comaut::render_markdown(reports);
    return kExitOk;
}

int cmd_fuzz(const comaut::FuzzOptions& options) {
    comaut::FuzzResult res = comaut::run_oracle_fuzz(options);
    std::cout << res.report;
    return res.ok ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"operations and state complexity on commutative regular languages"};
    app.require_subcommand(1);

    std::string expr_text, rhs_text, alphabet;
    bool as_json = false, as_dot = false, as_csv = false;

    CLI::App* eval_cmd = app.add_subcommand("eval",
                                            "evaluate an expression and print sc, index/period "
                                            "vectors and classification");
    eval_cmd->add_option("expr", expr_text, "language expression")->required();
    eval_cmd->add_option("--alphabet", alphabet, "declared alphabet, e.g. ab")->required();
    CLI::Option* eval_json = eval_cmd->add_flag("--json", as_json, "emit JSON with the grid");
    eval_cmd->add_flag("--dot", as_dot, "emit DOT of the grid's automaton")->excludes(eval_json);

    CLI::App* equiv_cmd = app.add_subcommand("equiv", "decide language equivalence");
    equiv_cmd->add_option("expr1", expr_text, "first expression")->required();
    equiv_cmd->add_option("expr2", rhs_text, "second expression")->required();
    equiv_cmd->add_option("--alphabet", alphabet, "declared alphabet")->required();

    std::string suite = "default";
    CLI::App* report_cmd = app.add_subcommand("report", "run the witness reproduction suite");
    report_cmd->add_option("--suite", suite, "default|group|aperiodic")
        ->check(CLI::IsMember({"default", "group", "aperiodic"}));
    CLI::Option* report_json = report_cmd->add_flag("--json", as_json, "raw results as JSON");
    report_cmd->add_flag("--csv", as_csv, "CSV table")->excludes(report_json);

    comaut::FuzzOptions fuzz_options;
    CLI::App* fuzz_cmd =
        app.add_subcommand("fuzz", "compare every operation against the box oracle on random grids");
    fuzz_cmd->add_option("--seed", fuzz_options.seed, "random seed");
    fuzz_cmd->add_option("--cases", fuzz_options.cases, "number of cases");
    fuzz_cmd->add_option("--k", fuzz_options.max_k, "maximum alphabet size")
        ->check(CLI::Range(std::size_t{1}, std::size_t{4}));
    fuzz_cmd->add_option("--max-index", fuzz_options.max_index, "maximum axis index");
    fuzz_cmd->add_option("--max-period", fuzz_options.max_period, "maximum axis period");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) {
            validate_alphabet(alphabet);
            return cmd_eval(expr_text, alphabet, as_json, as_dot);
        }
        if (equiv_cmd->parsed()) {
            validate_alphabet(alphabet);
            return cmd_equiv(expr_text, rhs_text, alphabet);
        }
        if (report_cmd->parsed()) return cmd_report(suite, as_json, as_csv);
        if (fuzz_cmd->parsed()) return cmd_fuzz(fuzz_options);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
