#include "explor/experiment.hpp"

#include "explor/errors.hpp"
#include "explor/families.hpp"
#include "explor/game.hpp"
#include "explor/machine.hpp"
#include "explor/pda.hpp"
#include "explor/turing.hpp"

#include <sstream>

#include <json.hpp>

namespace explor {

namespace {

using json = nlohmann::ordered_json;

const char* const kFamilies[] = {"multiple", "union", "block", "suffix_one", "mod", "invalc"};

Pda build_family(const std::string& family, long long param) {
    if (family == "multiple") return multiple_dpda(static_cast<int>(param));
    if (family == "union") return union_pda(static_cast<int>(param));
    if (family == "block") return block_pda();
    if (family == "suffix_one") return suffix_one_pda(static_cast<int>(param));
    if (family == "mod") return mod_pda(static_cast<int>(param));
    if (family == "invalc") return invalc_pda(demo_tm());
    throw ConfigError("unknown family: " + family);
}

std::string verdict_str(Verdict v) {
    switch (v) {
    case Verdict::DeterminerWins: return "DeterminerWins";
    case Verdict::SpoilerWins: return "SpoilerWins";
    default: return "Unknown";
    }
}

std::string token_str(const TokenChoice& t) {
    switch (t.kind) {
    case TokenChoice::Kind::Linear: return "linear";
    case TokenChoice::Kind::Exp: return "exp";
    default: return std::to_string(t.count);
    }
}

} // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("the config document must be an object");

    ExperimentConfig cfg;
    auto need = [&](const char* name) -> const json& {
        auto it = doc.find(name);
        if (it == doc.end()) throw ParseError(std::string("missing field: ") + name);
        return *it;
    };

    const json& fam = need("family");
    if (!fam.is_string()) throw ParseError("family must be a string");
    cfg.family = fam.get<std::string>();
    bool known = false;
    for (const char* f : kFamilies) known = known || cfg.family == f;
    if (!known) throw ConfigError("unknown family: " + cfg.family);

    const json& params = need("params");
    if (!params.is_array()) throw ParseError("params must be an array");
    for (const auto& p : params) {
        if (!p.is_number_integer()) throw ParseError("params entries must be integers");
        cfg.params.push_back(p.get<long long>());
    }

    const json& tokens = need("tokens");
    if (!tokens.is_array()) throw ParseError("tokens must be an array");
    for (const auto& t : tokens) {
        TokenChoice tc;
        if (t.is_number_integer()) {
            tc.kind = TokenChoice::Kind::Fixed;
            tc.count = t.get<long long>();
            if (tc.count < 1) throw ConfigError("token counts must be positive");
        } else if (t.is_string() && t.get<std::string>() == "linear") {
            tc.kind = TokenChoice::Kind::Linear;
        } else if (t.is_string() && t.get<std::string>() == "exp") {
            tc.kind = TokenChoice::Kind::Exp;
        } else {
            throw ParseError("tokens entries must be integers, \"linear\" or \"exp\"");
        }
        cfg.tokens.push_back(tc);
    }

    const json& horizons = need("horizons");
    if (!horizons.is_array()) throw ParseError("horizons must be an array");
    for (const auto& h : horizons) {
        if (!h.is_number_integer()) throw ParseError("horizons entries must be integers");
        int v = h.get<int>();
        if (v < 0) throw ConfigError("horizons must be nonnegative");
        cfg.horizons.push_back(v);
    }

    if (auto it = doc.find("eps_budget"); it != doc.end()) {
        if (!it->is_number_integer()) throw ParseError("eps_budget must be an integer");
        cfg.eps_budget = it->get<int>();
        if (cfg.eps_budget < 1) throw ConfigError("eps_budget must be positive");
    }
    if (auto it = doc.find("output"); it != doc.end()) {
        if (!it->is_string()) throw ParseError("output must be a string");
        cfg.output = it->get<std::string>();
    }

    if (cfg.params.empty()) throw ConfigError("params range is empty");
    if (cfg.tokens.empty()) throw ConfigError("tokens range is empty");
    if (cfg.horizons.empty()) throw ConfigError("horizons range is empty");
    return cfg;
}

std::string run_experiment(const ExperimentConfig& cfg) {
    if (cfg.params.empty() || cfg.tokens.empty() || cfg.horizons.empty())
        throw ConfigError("experiment ranges must be non-empty");

    std::ostringstream out;
    out << "family,param,states,stack_symbols,size,tokens,horizon,verdict,witness\n";
    for (long long param : cfg.params) {
        Pda pda = build_family(cfg.family, param);
        for (const TokenChoice& tc : cfg.tokens) {
            for (int horizon : cfg.horizons) {
                SolveOptions opts;
                opts.eps_budget = cfg.eps_budget;
                if (cfg.family == "invalc") opts.oracle = SolveOptions::Oracle::Bounded;
                GameOutcome res;
                switch (tc.kind) {
                case TokenChoice::Kind::Fixed:
                    res = solve(pda, static_cast<int>(tc.count), horizon, opts);
                    break;
                case TokenChoice::Kind::Linear:
                    res = solve_parameterized(
                        pda, [](int n) { return static_cast<long long>(n); }, horizon, opts);
                    break;
                case TokenChoice::Kind::Exp: {
                    long long m = std::max(1, max_nondet_branching(pda));
                    res = solve_parameterized(pda, exp_schedule(m), horizon, opts);
                    break;
                }
                }
                out << cfg.family << "," << param << "," << pda.states.size() << ","
                    << pda.stack_alphabet.size() << "," << size(pda) << "," << token_str(tc)
                    << "," << horizon << "," << verdict_str(res.verdict) << ","
                    << (res.verdict == Verdict::SpoilerWins ? res.witness_word : std::string())
                    << "\n";
            }
        }
    }
    return out.str();
}

} // namespace explor
