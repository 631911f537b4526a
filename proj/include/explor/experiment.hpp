#pragma once

#include <string>
#include <vector>

namespace explor {

// one entry of the token sweep: a fixed count, or a count growing with the
// announced horizon (linear: n tokens; exp: m^n tokens, m the machine's
// maximal per-mode branching, one token per possible run)
struct TokenChoice {
    enum class Kind { Fixed, Linear, Exp };
    Kind kind = Kind::Fixed;
    long long count = 1;

    bool operator==(const TokenChoice&) const = default;
};

struct ExperimentConfig {
    std::string family; // multiple | union | block | suffix_one | mod | invalc
    std::vector<long long> params;
    std::vector<TokenChoice> tokens;
    std::vector<int> horizons;
    int eps_budget = 64;
    std::string output; // optional path; empty means stdout

    bool operator==(const ExperimentConfig&) const = default;
};

// reads the structured-object config document; throws ParseError on malformed
// documents and ConfigError on empty ranges or unknown names
ExperimentConfig parse_experiment_config(const std::string& text);

// runs the sweep in declaration order and renders the verdict table as
// comma-separated rows. Deterministic: identical configs give identical bytes.
std::string run_experiment(const ExperimentConfig& config);

} // namespace explor
