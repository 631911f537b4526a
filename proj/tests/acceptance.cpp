// end-to-end acceptance checks; each criterion prints PASS or FAIL and the
// binary exits nonzero when anything failed. Tolerances are pinned here:
// zero mismatches everywhere, wall-clock budget on the oracle sweep.

#include "explor/errors.hpp"
#include "explor/experiment.hpp"
#include "explor/families.hpp"
#include "explor/game.hpp"
#include "explor/io.hpp"
#include "explor/lang.hpp"
#include "explor/machine.hpp"
#include "explor/membership.hpp"
#include "explor/turing.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace explor;

namespace {

constexpr double kOracleSweepBudgetSeconds = 300.0;
constexpr int kSweepLen = 8;        // word length cap for the oracle sweep
constexpr int kInvalcFuzzLen = 10;  // fuzz word cap for the encoding complement
constexpr int kInvalcFuzzCount = 400;
constexpr unsigned kSeed = 20260817;

std::vector<std::string> words_up_to(const std::vector<char>& sigma, int max_len) {
    std::vector<std::string> out{""};
    std::size_t lo = 0;
    for (int len = 1; len <= max_len; ++len) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (char c : sigma) out.push_back(out[i] + c);
        lo = hi;
    }
    return out;
}

int sweep_mismatches(const Pda& pda, const LanguageSpec& spec, int max_len) {
    int bad = 0;
    for (const auto& w : words_up_to(alphabet_of(spec), max_len))
        if (exact_accepts(pda, w) != decide(spec, w)) ++bad;
    return bad;
}

// shared corpus for the encoding complement: seeded fuzz, near-miss prefixes,
// every single-character substitution of both valid encodings, and the valid
// encodings themselves
std::vector<std::string> invalc_corpus() {
    TuringMachine tm = demo_tm();
    std::vector<char> sigma = encoding_alphabet(tm);
    std::vector<std::string> corpus = {"", "#", "##", "#A_#", "0A#_", "#A_#_B0#"};
    std::string v0 = *valc_string(tm, "", 64);
    std::string v1 = *valc_string(tm, "0", 64);
    corpus.push_back(v0);
    corpus.push_back(v1);
    for (const std::string& v : {v0, v1})
        for (std::size_t i = 0; i < v.size(); ++i)
            for (char c : sigma) {
                if (c == v[i]) continue;
                std::string mut = v;
                mut[i] = c;
                corpus.push_back(mut);
            }
    std::mt19937 rng(kSeed);
    std::uniform_int_distribution<int> len_d(0, kInvalcFuzzLen);
    std::uniform_int_distribution<std::size_t> ch_d(0, sigma.size() - 1);
    for (int i = 0; i < kInvalcFuzzCount; ++i) {
        std::string w;
        int len = len_d(rng);
        for (int j = 0; j < len; ++j) w.push_back(sigma[ch_d(rng)]);
        corpus.push_back(w);
        // bias half the fuzz towards near-encodings
        std::string near = v0.substr(0, static_cast<std::size_t>(len_d(rng)) * 2);
        for (int j = 0; j < 3; ++j) near.push_back(sigma[ch_d(rng)]);
        corpus.push_back(near);
    }
    return corpus;
}

int invalc_mismatches() {
    TuringMachine tm = demo_tm();
    Pda pda = invalc_pda(tm);
    Machine m(pda);
    int bad = 0;
    for (const auto& w : invalc_corpus()) {
        int budget = std::max(64, static_cast<int>(w.size()) + 8);
        MembershipVerdict v = bounded_accepts(m, w, budget);
        if (v == MembershipVerdict::Unknown) {
            ++bad;
            continue;
        }
        if ((v == MembershipVerdict::Accept) != invalc_oracle(tm, w)) ++bad;
    }
    return bad;
}

bool criterion1(std::string& note) {
    auto t0 = std::chrono::steady_clock::now();
    int bad = 0;
    for (int i = 1; i <= 4; ++i)
        bad += sweep_mismatches(multiple_dpda(i), multiple_language(i), kSweepLen);
    for (int k = 1; k <= 2; ++k)
        bad += sweep_mismatches(union_pda(k), union_language(k), kSweepLen);
    bad += sweep_mismatches(block_pda(), block_language(), kSweepLen);
    for (int n = 1; n <= 4; ++n)
        bad += sweep_mismatches(suffix_one_pda(n), suffix_one_language(n), kSweepLen);
    for (int n = 1; n <= 3; ++n)
        bad += sweep_mismatches(mod_pda(n), mod_language(n), kSweepLen);
    bad += invalc_mismatches();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << "mismatches " << bad << ", " << secs << "s";
    note = os.str();
    return bad == 0 && secs < kOracleSweepBudgetSeconds;
}

bool certified_spoiler_win(const GameOutcome& g, const Pda& pda) {
    if (g.verdict != Verdict::SpoilerWins) return false;
    if (!g.diagnostics.witness_certified) return false;
    if (g.losing_prefix_len < 0 ||
        g.losing_prefix_len > static_cast<int>(g.witness_word.size()))
        return false;
    return exact_accepts(
        pda, g.witness_word.substr(0, static_cast<std::size_t>(g.losing_prefix_len)));
}

bool criterion2(std::string& note) {
    GameOutcome a = solve(union_pda(1), 1, 3);
    GameOutcome b = solve(union_pda(1), 2, 8);
    GameOutcome c = solve(union_pda(2), 2, 4);
    GameOutcome d = solve(union_pda(2), 3, 9);
    note = "u1: " + a.witness_word + " / u2: " + c.witness_word;
    return certified_spoiler_win(a, union_pda(1)) && a.witness_word == "abb" &&
           b.verdict == Verdict::DeterminerWins && b.strategy != nullptr &&
           certified_spoiler_win(c, union_pda(2)) &&
           d.verdict == Verdict::DeterminerWins;
}

bool criterion3(std::string& note) {
    GameOutcome one5 = solve(block_pda(), 1, 5);
    GameOutcome one6 = solve(block_pda(), 1, 6);
    Pda prod = product_with_dfa(block_pda(), block_regular_dfa(1));
    GameOutcome restricted = solve(prod, 1, 6);
    GameOutcome linear =
        solve_parameterized(block_pda(), [](int n) { return static_cast<long long>(n); }, 6);
    note = "witnesses: " + one5.witness_word + ", " + one6.witness_word + ", " +
           restricted.witness_word;
    return certified_spoiler_win(one5, block_pda()) &&
           certified_spoiler_win(one6, block_pda()) &&
           certified_spoiler_win(restricted, prod) &&
           linear.verdict == Verdict::DeterminerWins && linear.announced_n == 6;
}

// single-state loop machine that re-enters its accepting state on every letter
Pda loop_pda() {
    Pda p;
    p.states = {"r"};
    p.input_alphabet = {'b'};
    p.stack_alphabet = {"Z"};
    p.initial_state = "r";
    p.initial_stack_symbol = "Z";
    p.accepting = {"r"};
    p.transitions.push_back({"r", 'b', "Z", "r", {"Z"}});
    return p;
}

bool criterion4(std::string& note) {
    // disjoint branches never revisit acceptance: all tables empty
    for (int n = 0; n <= 3; ++n) {
        ExtensionTable t = accepting_run_extensions(union_pda(1), std::string(n, 'a'),
                                                    "b", 4, 6);
        if (!t.pairs.empty() || t.truncated) {
            note = "union table not empty";
            return false;
        }
    }

    // the loop machine revisits acceptance at every position: table must be
    // the full brute-force pair set, with valid accepting witnesses
    Pda loop = loop_pda();
    Machine lm(loop);
    ExtensionTable t = accepting_run_extensions(loop, "", "b", 4, 4);
    std::set<std::pair<int, int>> expect;
    for (int j = 0; j <= 4; ++j) {
        for (const auto& r : enumerate_runs(lm, std::string(j, 'b'), 64).runs) {
            if (!lm.accepting(r.configs.back())) continue;
            // the machine is epsilon free: config i sits right after i letters
            for (int i = 0; i < j; ++i)
                if (i <= 4 && lm.accepting(r.configs[static_cast<std::size_t>(i)]))
                    expect.insert({i, j});
        }
    }
    std::set<std::pair<int, int>> got;
    for (const auto& [ij, wit] : t.pairs) {
        got.insert(ij);
        if (!valid_run(lm, wit.run) || !lm.accepting(wit.run.configs.back())) {
            note = "bad witness run";
            return false;
        }
    }
    if (got != expect) {
        note = "pair sets differ";
        return false;
    }

    // relabeled machines accept exactly the words the tables predict
    Pda loop_ext = relabel_extension(loop, 'b', 'c');
    ExtensionTable wide = accepting_run_extensions(loop, "", "b", 6, 6);
    int bad = 0;
    for (const auto& w : words_up_to({'b', 'c'}, 6)) {
        std::size_t fc = w.find('c');
        std::string u = fc == std::string::npos ? w : w.substr(0, fc);
        std::size_t m = w.size() - u.size();
        bool well_formed = w.find('c', fc == std::string::npos ? w.size() : fc) ==
                               std::string::npos ||
                           w.find('b', fc) == std::string::npos;
        bool predicted = false;
        if (well_formed && u.find('c') == std::string::npos) {
            if (m == 0)
                predicted = exact_accepts(loop, u);
            else
                predicted = wide.pairs.count({static_cast<int>(u.size()),
                                              static_cast<int>(u.size() + m)}) > 0;
        }
        if (exact_accepts(loop_ext, w) != predicted) ++bad;
    }
    Pda union_ext = relabel_extension(union_pda(1), 'b', 'c');
    for (const auto& w : words_up_to({'a', 'b', 'c'}, 5)) {
        bool predicted =
            w.find('c') == std::string::npos && exact_accepts(union_pda(1), w);
        if (exact_accepts(union_ext, w) != predicted) ++bad;
    }
    std::ostringstream os;
    os << "pairs " << got.size() << ", relabel mismatches " << bad;
    note = os.str();
    return bad == 0;
}

bool criterion5(std::string& note) {
    std::vector<Pda> corpus = {multiple_dpda(1), multiple_dpda(2), multiple_dpda(3),
                               union_pda(1),     union_pda(2),     block_pda(),
                               suffix_one_pda(1), suffix_one_pda(2), suffix_one_pda(3),
                               mod_pda(1),       mod_pda(2),       mod_pda(3),
                               loop_pda()};
    int checked = 0;
    for (const auto& pda : corpus) {
        if (!validate(pda).eps_free) continue;
        ++checked;
        Machine m(pda);
        long long branch = max_nondet_branching(pda);
        for (const auto& w : words_up_to(pda.input_alphabet, 6)) {
            RunSet rs = enumerate_runs(m, w, 64);
            double cap = std::pow(static_cast<double>(branch),
                                  static_cast<double>(w.size()));
            if (static_cast<double>(rs.runs.size()) > cap) {
                note = "run count over the branching bound";
                return false;
            }
        }
    }

    // the full binary tree machine meets the bound exactly
    Pda bin;
    bin.states = {"q"};
    bin.input_alphabet = {'a'};
    bin.stack_alphabet = {"Z"};
    bin.initial_state = "q";
    bin.initial_stack_symbol = "Z";
    bin.accepting = {"q"};
    bin.transitions.push_back({"q", 'a', "Z", "q", {"Z"}});
    bin.transitions.push_back({"q", 'a', "Z", "q", {"Z", "Z"}});
    Machine bm(bin);
    if (max_nondet_branching(bin) != 2) {
        note = "branching misread";
        return false;
    }
    for (int len = 0; len <= 6; ++len) {
        std::size_t runs = enumerate_runs(bm, std::string(len, 'a'), 64).runs.size();
        if (runs != (1u << len)) {
            note = "binary machine misses the exact count";
            return false;
        }
    }
    std::ostringstream os;
    os << checked << " eps-free machines checked";
    note = os.str();
    return checked >= 3;
}

bool criterion6(std::string& note) {
    for (int n = 1; n <= 4; ++n)
        if (sweep_mismatches(suffix_one_pda(n), suffix_one_language(n), n + 3) != 0) {
            note = "language mismatch";
            return false;
        }

    // log-size fit: states <= a*ceil(log2 n) + b with pinned constants
    const int fit_a = 6;
    const int fit_b = 8;
    std::map<int, std::size_t> bucket_max;
    for (int n = 2; n <= 1024; ++n) {
        std::size_t states = suffix_one_pda(n).states.size();
        int bucket = static_cast<int>(std::ceil(std::log2(static_cast<double>(n))));
        if (states > static_cast<std::size_t>(fit_a * bucket + fit_b)) {
            note = "state count over the log fit";
            return false;
        }
        auto& mx = bucket_max[bucket];
        mx = std::max(mx, states);
    }
    std::size_t prev = 0;
    for (const auto& [bucket, mx] : bucket_max) {
        if (mx < prev) {
            note = "bucket maxima not monotone";
            return false;
        }
        prev = mx;
    }
    for (int n : {1, 2, 3, 4, 1024}) {
        auto gamma = suffix_one_pda(n).stack_alphabet;
        std::set<std::string> g(gamma.begin(), gamma.end());
        if (g != std::set<std::string>{"0", "1", "Z"}) {
            note = "stack alphabet drifted";
            return false;
        }
    }
    for (int n : {2, 3}) {
        StrategyCheck chk =
            check_strategy(suffix_one_pda(n), n, scripted_round_robin(n), 2 * n + 2);
        if (!chk.ok) {
            note = "round robin script lost";
            return false;
        }
    }
    std::ostringstream os;
    os << "states <= " << fit_a << "*ceil(log2 n) + " << fit_b << ", bucket maxima";
    for (const auto& [bucket, mx] : bucket_max) os << " " << bucket << ":" << mx;
    note = os.str();
    return true;
}

bool criterion7(std::string& note) {
    Pda pda = block_pda();
    Machine m(pda);
    std::mt19937 rng(kSeed);
    std::vector<char> sigma = pda.input_alphabet;
    std::uniform_int_distribution<int> len_d(0, 6);
    std::uniform_int_distribution<std::size_t> ch_d(0, sigma.size() - 1);

    std::vector<Run> runs;
    while (runs.size() < 1000) {
        std::string w;
        int len = len_d(rng);
        for (int j = 0; j < len; ++j) w.push_back(sigma[ch_d(rng)]);
        for (auto& r : enumerate_runs(m, w, 64).runs) {
            runs.push_back(std::move(r));
            if (runs.size() == 1000) break;
        }
    }

    for (const auto& r : runs) {
        std::vector<std::size_t> brute;
        for (std::size_t s = 0; s < r.configs.size(); ++s) {
            bool step = true;
            for (std::size_t t = s; t < r.configs.size(); ++t)
                step = step && r.configs[t].stack.size() >= r.configs[s].stack.size();
            if (step) brute.push_back(s);
        }
        if (steps_of_run(r) != brute) {
            note = "steps disagree with the quantifier check";
            return false;
        }
    }

    long long spliced = 0;
    long long accepting_suffixes = 0;
    for (std::size_t a = 0; a < 60; ++a) {
        for (std::size_t b = 0; b < 60; ++b) {
            const Run& suf = runs[a];
            const Run& pre = runs[b];
            for (std::size_t sa : steps_of_run(suf)) {
                for (std::size_t sb : steps_of_run(pre)) {
                    const Configuration& ca = suf.configs[sa];
                    const Configuration& cb = pre.configs[sb];
                    if (ca.stack.empty() || cb.stack.empty()) continue;
                    // stacks are stored top first
                    if (ca.state != cb.state || ca.stack.front() != cb.stack.front())
                        continue;
                    Run joined = splice(m, suf, sa, pre, sb);
                    if (!valid_run(m, joined)) {
                        note = "spliced run failed validation";
                        return false;
                    }
                    ++spliced;
                    if (m.accepting(suf.configs.back())) {
                        ++accepting_suffixes;
                        if (!m.accepting(joined.configs.back())) {
                            note = "accepting suffix lost acceptance";
                            return false;
                        }
                    }
                }
            }
        }
    }
    // identity splices reproduce their run
    for (std::size_t i = 0; i < 50; ++i) {
        const Run& r = runs[i * 7 % runs.size()];
        for (std::size_t s : steps_of_run(r)) {
            if (r.configs[s].stack.empty()) continue;
            if (splice(m, r, s, r, s) != r) {
                note = "identity splice drifted";
                return false;
            }
        }
    }
    std::ostringstream os;
    os << runs.size() << " runs, " << spliced << " splices, " << accepting_suffixes
       << " accepting suffixes";
    note = os.str();
    return spliced > 0 && accepting_suffixes > 0;
}

bool criterion8(std::string& note) {
    int bad = invalc_mismatches();
    if (bad != 0) {
        note = "oracle disagreements";
        return false;
    }
    Pda pda = invalc_pda(demo_tm());
    SolveOptions opts;
    opts.oracle = SolveOptions::Oracle::Bounded;
    GameOutcome g = solve(pda, 2, 12, opts);
    if (g.verdict != Verdict::DeterminerWins) {
        note = "game not won at horizon 12";
        return false;
    }

    // branch determinism: outside the initial fan-out every (state, input,
    // top) has one move and no state mixes eps with letters on the same top
    std::map<std::tuple<std::string, int, std::string>, int> moves;
    std::map<std::pair<std::string, std::string>, std::pair<bool, bool>> kinds;
    int init_eps = 0;
    for (const auto& t : pda.transitions) {
        if (t.from == pda.initial_state) {
            if (!t.input.has_value()) ++init_eps;
            else {
                note = "letter move at the fan-out state";
                return false;
            }
            continue;
        }
        int input = t.input ? *t.input : -1;
        if (++moves[{t.from, input, t.pop}] > 1) {
            note = "duplicated move in a deterministic branch";
            return false;
        }
        auto& [eps, letter] = kinds[{t.from, t.pop}];
        if (t.input) letter = true;
        else eps = true;
        if (eps && letter) {
            note = "eps and letter moves share a mode";
            return false;
        }
    }
    std::ostringstream os;
    os << "fan-out " << init_eps << ", nodes " << g.diagnostics.nodes_expanded;
    note = os.str();
    return init_eps == 3;
}

bool criterion9(std::string& note) {
    ExperimentConfig cfg;
    cfg.family = "block";
    cfg.params = {0};
    cfg.tokens = {{TokenChoice::Kind::Fixed, 1}, {TokenChoice::Kind::Linear, 1}};
    cfg.horizons = {6};
    std::string first = run_experiment(cfg);
    std::string second = run_experiment(cfg);
    if (first != second) {
        note = "rerun bytes differ";
        return false;
    }
    std::string expect =
        "family,param,states,stack_symbols,size,tokens,horizon,verdict,witness\n"
        "block,0,9,3,27,1,6,SpoilerWins,###a#b\n"
        "block,0,9,3,27,linear,6,DeterminerWins,\n";
    if (first != expect) {
        note = "matrix content drifted";
        return false;
    }

    // the command-line front end emits the same bytes
    auto dir = std::filesystem::temp_directory_path() / "explor_acceptance";
    std::filesystem::create_directories(dir);
    std::string cfg_path = (dir / "c9.json").string();
    write_text_file(cfg_path, R"({
        "family": "block",
        "params": [0],
        "tokens": [1, "linear"],
        "horizons": [6]
    })");
    std::string cmd = std::string(EXPLOR_CLI_PATH) + " experiment " + cfg_path;
    std::string out;
    for (int round = 0; round < 2; ++round) {
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            note = "pipe failed";
            return false;
        }
        std::string got;
        std::array<char, 4096> buf{};
        std::size_t n = 0;
        while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) got.append(buf.data(), n);
        if (pclose(pipe) != 0) {
            note = "command failed";
            return false;
        }
        if (round == 0) out = got;
        else if (out != got) {
            note = "command rerun differs";
            return false;
        }
    }
    if (out != expect) {
        note = "command output drifted";
        return false;
    }
    note = "matrix stable across library and command reruns";
    return true;
}

struct GridEntry {
    std::string name;
    Pda pda;
    int max_h = 8;
    SolveOptions opts;
};

bool criterion10(std::string& note) {
    std::vector<GridEntry> grid;
    for (int i = 1; i <= 3; ++i)
        grid.push_back({"multiple" + std::to_string(i), multiple_dpda(i), 8, {}});
    for (int k = 1; k <= 2; ++k)
        grid.push_back({"union" + std::to_string(k), union_pda(k), 8, {}});
    grid.push_back({"block", block_pda(), 6, {}});
    grid.push_back(
        {"product", product_with_dfa(block_pda(), block_regular_dfa(1)), 6, {}});
    for (int n = 1; n <= 3; ++n)
        grid.push_back({"suffix" + std::to_string(n), suffix_one_pda(n), 8, {}});
    for (int n = 1; n <= 3; ++n)
        grid.push_back({"mod" + std::to_string(n), mod_pda(n), 8, {}});
    SolveOptions bounded;
    bounded.oracle = SolveOptions::Oracle::Bounded;
    grid.push_back({"invalc", invalc_pda(demo_tm()), 4, bounded});

    long long solves = 0;
    long long adaptive_only = 0;
    int violations = 0;
    std::string first_violation;
    auto flag = [&](const std::string& what) {
        ++violations;
        if (first_violation.empty()) first_violation = what;
    };

    for (const auto& entry : grid) {
        bool deterministic = validate(entry.pda).deterministic;
        std::map<std::pair<int, int>, Verdict> cell;
        for (int k = 1; k <= 3; ++k) {
            for (int h = 0; h <= entry.max_h; h += 2) {
                GameOutcome g = solve(entry.pda, k, h, entry.opts);
                ++solves;
                cell[{k, h}] = g.verdict;
                if (g.verdict == Verdict::Unknown) flag(entry.name + ": unknown verdict");
                if (g.verdict == Verdict::SpoilerWins && !g.diagnostics.witness_certified)
                    ++adaptive_only; // no single word beats every token placement
                if (deterministic && k == 1 && g.verdict != Verdict::DeterminerWins)
                    flag(entry.name + ": deterministic machine lost at k=1");
                if (g.verdict == Verdict::DeterminerWins && h > 0 && h <= 6 && k <= 2) {
                    DeterminerStrategy strat;
                    strat.solved = g.strategy;
                    StrategyCheck chk = check_strategy(entry.pda, k, strat, h, entry.opts);
                    if (!chk.ok) flag(entry.name + ": strategy failed the checker");
                }
            }
        }
        for (const auto& [kh, v] : cell) {
            auto [k, h] = kh;
            auto up_k = cell.find({k + 1, h});
            if (v == Verdict::DeterminerWins && up_k != cell.end() &&
                up_k->second == Verdict::SpoilerWins)
                flag(entry.name + ": token monotonicity broken");
            auto up_h = cell.find({k, h + 2});
            if (v == Verdict::SpoilerWins && up_h != cell.end() &&
                up_h->second == Verdict::DeterminerWins)
                flag(entry.name + ": horizon monotonicity broken");
        }
    }
    std::ostringstream os;
    os << solves << " solves, " << violations << " violations, " << adaptive_only
       << " adaptive-only wins";
    if (!first_violation.empty()) os << " (first: " << first_violation << ")";
    note = os.str();
    return violations == 0;
}

} // namespace

int main() {
    using CriterionFn = bool (*)(std::string&);
    std::vector<std::pair<int, CriterionFn>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
        {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
        {9, criterion9}, {10, criterion10}};

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        std::string note;
        bool ok = false;
        try {
            ok = fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL");
        if (!note.empty()) std::cout << "  [" << note << "]";
        std::cout << "\n" << std::flush;
    }
    return failures == 0 ? 0 : 1;
}
