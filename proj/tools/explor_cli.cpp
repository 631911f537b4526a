#include "explor/errors.hpp"
#include "explor/experiment.hpp"
#include "explor/families.hpp"
#include "explor/game.hpp"
#include "explor/io.hpp"
#include "explor/machine.hpp"
#include "explor/membership.hpp"
#include "explor/turing.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace {

using namespace explor;

std::string config_line(const Machine& m, const Configuration& c) {
    std::string out = m.state_name(c.state) + " [";
    for (std::size_t i = 0; i < c.stack.size(); ++i) {
        if (i) out += " ";
        out += m.sym_name(c.stack[i]);
    }
    return out + "]";
}

int cmd_member(const std::string& file, const std::string& word) {
    Pda pda = load_pda(file);
    bool in = exact_accepts(pda, word);
    std::cout << (in ? "accept" : "reject") << "\n";
    return in ? 0 : 1;
}

int cmd_runs(const std::string& file, const std::string& word, int eps_budget) {
    Pda pda = load_pda(file);
    Machine m(pda);
    RunSet rs = enumerate_runs(m, word, eps_budget);
    std::size_t acc = 0;
    for (const auto& r : rs.runs)
        if (m.accepting(r.configs.back())) ++acc;
    std::cout << "total: " << rs.runs.size() << "\n";
    std::cout << "accepting: " << acc << "\n";
    if (rs.truncated) std::cout << "truncated: yes\n";
    return 0;
}

void write_strategy(const std::string& path, const Machine& m, const SolvedStrategy& st) {
    std::ostringstream out;
    for (const auto& [key, combo] : st.table) {
        const NodeKey& node = key.first;
        out << "letter " << key.second << " steps_left " << node.steps_left << "\n";
        for (std::size_t i = 0; i < node.tokens.size(); ++i) {
            out << "  " << config_line(m, node.tokens[i]) << " -> ";
            if (combo[i]) out << config_line(m, combo[i]->to);
            else out << "dead";
            out << "\n";
        }
    }
    write_text_file(path, out.str());
}

int cmd_game(const std::string& file, int tokens, const std::string& tokens_fn, int horizon,
             const std::string& interactive, const SolveOptions& opts,
             const std::string& strategy_out) {
    Pda pda = load_pda(file);

    if (!interactive.empty()) {
        if (tokens < 1) throw ConfigError("interactive play needs --tokens");
        HumanRole role = interactive == "spoiler" ? HumanRole::Spoiler : HumanRole::Determiner;
        Transcript t = play_interactive(pda, tokens, role, std::cin, std::cout, opts);
        if (t.determiner_lost) {
            std::cout << "determiner lost at prefix length " << t.loss_prefix_len << "\n";
            return 1;
        }
        std::cout << "determiner survived\n";
        return 0;
    }

    GameOutcome res;
    if (!tokens_fn.empty()) {
        if (tokens_fn == "linear")
            res = solve_parameterized(
                pda, [](int n) { return static_cast<long long>(n); }, horizon, opts);
        else if (tokens_fn == "exp")
            res = solve_parameterized(
                pda, exp_schedule(std::max(1, max_nondet_branching(pda))), horizon, opts);
        else
            throw ConfigError("unknown token function: " + tokens_fn);
    } else {
        if (tokens < 1) throw ConfigError("need --tokens or --tokens-fn");
        res = solve(pda, tokens, horizon, opts);
    }

    switch (res.verdict) {
    case Verdict::DeterminerWins:
        std::cout << "verdict: DeterminerWins\n";
        if (!strategy_out.empty() && res.strategy) {
            Machine m(pda);
            write_strategy(strategy_out, m, *res.strategy);
            std::cout << "strategy: " << strategy_out << "\n";
        }
        return 0;
    case Verdict::SpoilerWins:
        std::cout << "verdict: SpoilerWins\n";
        std::cout << "witness: " << res.witness_word << "\n";
        std::cout << "losing_prefix_len: " << res.losing_prefix_len << "\n";
        if (!res.diagnostics.witness_certified)
            std::cout << "witness_certified: no (adaptive play only)\n";
        return 1;
    default:
        std::cout << "verdict: Unknown\n";
        return 3;
    }
}

int cmd_construct(const std::string& family, int i, int k, int n, const std::string& out_path) {
    Pda pda;
    if (family == "multiple") {
        if (i < 1) throw ConfigError("multiple needs --i >= 1");
        pda = multiple_dpda(i);
    } else if (family == "union") {
        if (k < 1) throw ConfigError("union needs --k >= 1");
        pda = union_pda(k);
    } else if (family == "block") {
        pda = block_pda();
    } else if (family == "suffix_one") {
        if (n < 1) throw ConfigError("suffix_one needs --n >= 1");
        pda = suffix_one_pda(n);
    } else if (family == "mod") {
        if (n < 1) throw ConfigError("mod needs --n >= 1");
        pda = mod_pda(n);
    } else if (family == "invalc") {
        pda = invalc_pda(demo_tm());
    } else {
        throw ConfigError("unknown family: " + family);
    }
    std::string text = dump_pda(pda);
    if (out_path.empty()) std::cout << text;
    else write_text_file(out_path, text);
    return 0;
}

int cmd_experiment(const std::string& config_file) {
    ExperimentConfig cfg = parse_experiment_config(read_text_file(config_file));
    std::string csv = run_experiment(cfg);
    if (!cfg.output.empty()) write_text_file(cfg.output, csv);
    std::cout << csv;
    return 0;
}

int cmd_export_dot(const std::string& file) {
    Pda pda = load_pda(file);
    std::cout << export_dot(pda);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pushdown explorability workbench"};
    app.require_subcommand(1);

    std::string file, word, tokens_fn, interactive, strategy_out, family, out_path, config_file;
    int tokens = 0, horizon = 0, eps_budget = 64;
    int i = 0, k = 0, n = 0;
    bool strict = false;
    std::string oracle = "exact";

    auto* member = app.add_subcommand("member", "exact membership for a word");
    member->add_option("pda-file", file)->required();
    member->add_option("word", word)->required();

    auto* runs = app.add_subcommand("runs", "enumerate bounded runs on a word");
    runs->add_option("pda-file", file)->required();
    runs->add_option("word", word)->required();
    runs->add_option("--eps-budget", eps_budget);

    auto* game = app.add_subcommand("game", "solve the explorability game");
    game->add_option("pda-file", file)->required();
    game->add_option("--tokens", tokens);
    game->add_option("--tokens-fn", tokens_fn)->check(CLI::IsMember({"linear", "exp"}));
    game->add_option("--horizon", horizon);
    game->add_option("--interactive", interactive)
        ->check(CLI::IsMember({"spoiler", "determiner"}));
    game->add_flag("--strict-checkpoint", strict);
    game->add_option("--eps-budget", eps_budget);
    game->add_option("--oracle", oracle)->check(CLI::IsMember({"exact", "bounded"}));
    game->add_option("--strategy-out", strategy_out);

    auto* construct = app.add_subcommand("construct", "emit a construction family member");
    construct->add_option("family", family)->required();
    construct->add_option("--i", i);
    construct->add_option("--k", k);
    construct->add_option("--n", n);
    construct->add_option("--out", out_path);

    auto* experiment = app.add_subcommand("experiment", "run a verdict sweep from a config");
    experiment->add_option("config-file", config_file)->required();

    auto* export_dot_cmd = app.add_subcommand("export-dot", "emit graph text for a machine");
    export_dot_cmd->add_option("pda-file", file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (member->parsed()) return cmd_member(file, word);
        if (runs->parsed()) return cmd_runs(file, word, eps_budget);
        if (game->parsed()) {
            SolveOptions opts;
            opts.eps_budget = eps_budget;
            opts.strict_checkpoint = strict;
            opts.oracle = oracle == "bounded" ? SolveOptions::Oracle::Bounded
                                              : SolveOptions::Oracle::Exact;
            return cmd_game(file, tokens, tokens_fn, horizon, interactive, opts, strategy_out);
        }
        if (construct->parsed()) return cmd_construct(family, i, k, n, out_path);
        if (experiment->parsed()) return cmd_experiment(config_file);
        if (export_dot_cmd->parsed()) return cmd_export_dot(file);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
