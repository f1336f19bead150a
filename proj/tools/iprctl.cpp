// Command-line front end: check formulae, evaluate quantities and emit the
// CSV tables used for hitting-probability, sensitivity and cost reports.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "iprctl/error.hpp"
#include "iprctl/oracle.hpp"
#include "iprctl/reports.hpp"

namespace {

using namespace iprctl;

enum ExitCode : int {
    kOk = 0,
    kUnsatisfied = 1,
    kUsage = 2,
    kFileError = 3,
    kModelError = 4,
    kFormulaError = 5,
    kEvaluationError = 6,
};

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::FileNotFound: return kFileError;
        case ErrorCode::SchemaError:
        case ErrorCode::IncoherentCredalSet:
        case ErrorCode::NegativeWeight:
        case ErrorCode::NotNormalized:
        case ErrorCode::EpsOutOfRange: return kModelError;
        case ErrorCode::SyntaxError:
        case ErrorCode::UnknownAtom: return kFormulaError;
        default: return kEvaluationError;
    }
}

std::size_t to_horizon(long long value) {
    if (value < 0) throw Error(ErrorCode::NegativeHorizon, "horizon must be non-negative");
    return static_cast<std::size_t>(value);
}

std::size_t horizon_or_model(const std::optional<long long>& flag, const TransitionModel& model) {
    if (flag) return to_horizon(*flag);
    if (model.horizon()) return *model.horizon();
    throw Error(ErrorCode::InvalidArgument, "no --horizon given and the model declares none");
}

std::string read_formula(const std::string& inline_text, const std::string& file) {
    if (file.empty()) return inline_text;
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct Common {
    std::string model_path;
    std::optional<long long> horizon;
    std::string mode = "precise";
    double tolerance = 1e-9;
    bool literal_bounded_reward = false;

    CheckOptions check_options() const {
        CheckOptions options;
        if (horizon) options.horizon = to_horizon(*horizon);
        options.tolerance = tolerance;
        if (literal_bounded_reward) options.bounded_reward_rule = BoundedRewardRule::Literal;
        return options;
    }
};

void add_common(CLI::App* cmd, Common& common, bool with_mode) {
    cmd->add_option("model", common.model_path, "Model JSON file")->required();
    cmd->add_option("--horizon", common.horizon, "Horizon n (defaults to the model's)");
    cmd->add_option("--tolerance", common.tolerance, "Slack for threshold comparisons");
    cmd->add_flag("--paper-literal-bounded-reward", common.literal_bounded_reward,
                  "Use the successor-charging bounded-reward recursion");
    if (with_mode) {
        cmd->add_option("--mode", common.mode, "precise, lower or upper")
            ->check(CLI::IsMember({"precise", "lower", "upper"}));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model checker for (imprecise) probabilistic reward CTL"};
    app.require_subcommand(1);

    Common common;
    std::string formula_text;
    std::string formula_file;
    std::vector<std::string> target;
    std::string state;
    std::vector<double> eps_grid;
    std::vector<std::string> counts;
    std::string query_kind = "hitting";
    std::vector<std::string> stay;
    long long budget = 0;

    auto* check_cmd = app.add_subcommand("check", "Per-state verdicts for a formula");
    add_common(check_cmd, common, false);
    check_cmd->add_option("formula", formula_text, "Formula text");
    check_cmd->add_option("--formula-file", formula_file, "Read the formula from a file");

    auto* eval_cmd = app.add_subcommand("eval", "Values of the top-level P/E operator");
    add_common(eval_cmd, common, true);
    eval_cmd->add_option("formula", formula_text, "Formula text");
    eval_cmd->add_option("--formula-file", formula_file, "Read the formula from a file");

    auto* table_cmd = app.add_subcommand("table", "Hitting probabilities for t = 0..horizon (CSV)");
    add_common(table_cmd, common, true);
    table_cmd->add_option("--target", target, "Target state ids")->required()->delimiter(',');

    auto* sweep_cmd = app.add_subcommand("sweep", "Lower/upper hitting bands over a contamination grid (CSV)");
    add_common(sweep_cmd, common, false);
    sweep_cmd->add_option("--target", target, "Target state ids")->required()->delimiter(',');
    sweep_cmd->add_option("--state", state, "Start state (defaults to the initial state)");
    sweep_cmd->add_option("--eps", eps_grid, "Contamination levels")->required()->delimiter(',');

    auto* cost_cmd = app.add_subcommand("cost", "Cohort cost bounds (CSV)");
    add_common(cost_cmd, common, false);
    cost_cmd->add_option("--target", target, "Stopping states")->required()->delimiter(',');
    cost_cmd->add_option("--count", counts, "state=count, repeatable")->delimiter(',');

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force bounds for debugging");
    oracle_cmd->group("");
    add_common(oracle_cmd, common, false);
    oracle_cmd->add_option("--query", query_kind)->check(CLI::IsMember({"hitting", "until", "next", "reward", "bounded"}));
    oracle_cmd->add_option("--target", target)->required()->delimiter(',');
    oracle_cmd->add_option("--stay", stay)->delimiter(',');
    oracle_cmd->add_option("--state", state);
    oracle_cmd->add_option("--budget", budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const TransitionModel model = io::load_model(common.model_path);
        const auto options = common.check_options();

        if (check_cmd->parsed() || eval_cmd->parsed()) {
            const std::string text = read_formula(formula_text, formula_file);
            if (text.empty()) throw Error(ErrorCode::InvalidArgument, "no formula given");
            const auto formula = parse_formula(text);

            if (check_cmd->parsed()) {
                const auto result = report::check(model, *formula, options);
                for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
                std::cout << report::format_check(model, result);
                return result.initial_satisfied ? kOk : kUnsatisfied;
            }

            Checker checker(model, options);
            const bool override_mode = eval_cmd->count("--mode") > 0;
            const auto pick = [&](BoundKind kind) {
                return override_mode ? parse_mode(common.mode) : mode_for_kind(kind);
            };
            ValueVector values;
            if (const auto* p = std::get_if<state::Prob>(&formula->node)) {
                values = checker.evaluate_path(p->path, pick(p->kind));
            } else if (const auto* e = std::get_if<state::ExpReward>(&formula->node)) {
                values = checker.evaluate_reward(*e->target, pick(e->kind));
            } else {
                values = checker.sat(*formula).indicator();
            }
            std::cout << "state,value\n";
            for (std::size_t s = 0; s < model.size(); ++s) {
                std::cout << model.space().id(s) << "," << report::fixed6(values[s]) << "\n";
            }
            return kOk;
        }

        if (table_cmd->parsed()) {
            const auto goal = StateSet::from_ids(model.space(), target);
            std::cout << report::hitting_table_csv(model, goal, horizon_or_model(common.horizon, model),
                                                   parse_mode(common.mode));
            return kOk;
        }

        if (sweep_cmd->parsed()) {
            const auto doc = io::read_document(common.model_path);
            const std::string start = state.empty() ? model.space().id(model.initial_state()) : state;
            std::cout << report::sweep_csv(report::contamination_sweep(
                doc, target, start, horizon_or_model(common.horizon, model), eps_grid));
            return kOk;
        }

        if (cost_cmd->parsed()) {
            std::map<std::string, std::uint64_t> cohort;
            for (const auto& entry : counts) {
                const auto eq = entry.find('=');
                if (eq == std::string::npos) {
                    throw Error(ErrorCode::InvalidArgument, "count '" + entry + "' is not state=number");
                }
                cohort[entry.substr(0, eq)] = std::stoull(entry.substr(eq + 1));
            }
            const auto goal = StateSet::from_ids(model.space(), target);
            std::cout << report::cost_csv(
                report::cohort_cost(model, cohort, goal, horizon_or_model(common.horizon, model)));
            return kOk;
        }

        if (oracle_cmd->parsed()) {
            const std::size_t n = horizon_or_model(common.horizon, model);
            const auto goal = StateSet::from_ids(model.space(), target);
            const auto keep = stay.empty() ? StateSet::all(model.size()) : StateSet::from_ids(model.space(), stay);
            if (budget < 0) throw Error(ErrorCode::NegativeBudget, "budget must be non-negative");
            oracle::Query q = oracle::query::Until{keep, goal, n};
            if (query_kind == "next") q = oracle::query::Next{goal};
            if (query_kind == "reward") q = oracle::query::CumulativeReward{goal, n};
            if (query_kind == "bounded") q = oracle::query::BoundedReward{keep, goal, n, static_cast<Reward>(budget)};
            const std::size_t start = state.empty() ? model.initial_state() : model.space().index(state);
            const auto bounds = oracle::brute_force(model, q, start);
            std::cout << "lower,upper\n" << report::fixed6(bounds.lower) << "," << report::fixed6(bounds.upper) << "\n";
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
