#pragma once

#include "explor/machine.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace explor {

// two-player letter game: Spoiler picks letters, Determiner advances k tokens
// (each an eps*-then-letter step) and must keep every language-member prefix
// accepted by some token.

enum class Verdict { DeterminerWins, SpoilerWins, Unknown };

struct GamePosition {
    std::vector<Configuration> tokens; // ordered as played; dead tokens removed
    std::string prefix;
    std::vector<std::size_t> certified_prefixes; // member prefixes already discharged
};

// canonical solver node: alive token multiset (sorted), the full set of
// configurations reachable on the prefix (sorted), and letters still to play.
// the prefix itself is not part of the key; every game-relevant fact about it
// is carried by the frontier.
struct NodeKey {
    std::vector<Configuration> tokens;
    std::vector<Configuration> frontier;
    int steps_left = 0;

    auto operator<=>(const NodeKey&) const = default;
};

// winning Determiner responses: per (node, letter) one surviving move per
// token, aligned with the node's sorted token order; nullopt marks a token
// with no move for that letter (it dies)
struct SolvedStrategy {
    std::map<std::pair<NodeKey, char>, std::vector<std::optional<MoveOption>>> table;
};

// what a scripted strategy sees when asked to move one token
struct StrategyContext {
    const Machine* machine = nullptr;
    int round = 0;      // 1-based index of the letter being played
    char letter = 0;
    int token_index = 0; // position in the original token tuple
    const Configuration* token = nullptr;
    const std::vector<MoveOption>* options = nullptr; // never empty when called
};

// exactly one of the two policies is set
struct DeterminerStrategy {
    std::shared_ptr<SolvedStrategy> solved;
    std::function<int(const StrategyContext&)> scripted; // returns an option index
};

struct GameDiagnostics {
    long long nodes_expanded = 0;
    long long table_hits = 0;
    bool truncation_seen = false;   // some eps budget cut a search anywhere
    bool node_cap_hit = false;
    bool witness_certified = false; // SpoilerWins: witness word replays to a violation
    bool witness_exhaustive = false; // fallback word search produced the witness
};

struct GameOutcome {
    Verdict verdict = Verdict::Unknown;
    int horizon = 0;
    int announced_n = -1;       // set by solve_parameterized
    std::string witness_word;   // SpoilerWins: spoiler word leading to the violation
    int losing_prefix_len = -1; // length of the violated member prefix of witness_word
    std::shared_ptr<SolvedStrategy> strategy; // DeterminerWins: surviving move table
    GameDiagnostics diagnostics;
};

struct SolveOptions {
    int eps_budget = 64;
    bool strict_checkpoint = false; // member prefixes must be accepted at the checkpoint
                                    // itself, with no eps lookahead
    long long node_cap = 20'000'000;
    enum class Oracle { Exact, Bounded } oracle = Oracle::Exact; // witness certification
};

// exact minimax value of the horizon-truncated game. SpoilerWins carries a
// witness word checked by replay plus the membership oracle; DeterminerWins
// carries the surviving move table. Unknown only when an eps budget or the
// node cap touched the value.
GameOutcome solve(const Pda& pda, int k, int horizon, const SolveOptions& opts = {});

// Spoiler announces the maximum word length n; the token budget is token_fn(n)
GameOutcome solve_parameterized(const Pda& pda, const std::function<long long(int)>& token_fn,
                                int n, const SolveOptions& opts = {});

// token schedule n -> base^n, clamped far above the solver's token guard so
// oversized budgets surface as ConfigError instead of overflowing
std::function<long long(int)> exp_schedule(long long base);

struct StrategyCheck {
    bool ok = false;
    std::string failing_play;    // letters of the first losing Spoiler sequence
    int failing_prefix_len = -1; // member prefix that went unaccepted
};

// plays every Spoiler letter sequence up to horizon against the strategy
StrategyCheck check_strategy(const Pda& pda, int k, const DeterminerStrategy& strategy,
                             int horizon, const SolveOptions& opts = {});

// token i starts the stack counter at input positions congruent to i mod n,
// re-arming through the reset eps loop; built for suffix_one_pda(n) and
// mod_pda(n) with k = n tokens
DeterminerStrategy scripted_round_robin(int n);

enum class HumanRole { Spoiler, Determiner };

struct TranscriptRound {
    char letter = 0;
    // per original token: the move taken, or nullopt when the token died
    std::vector<std::optional<MoveOption>> responses;
};

struct Transcript {
    int k = 0;
    std::string word;
    std::vector<TranscriptRound> rounds;
    bool determiner_lost = false;
    int loss_prefix_len = -1;
    bool quit = false;
};

// text-mode alternation with legal-move enforcement; the machine Determiner
// plays the lexicographically smallest surviving move, the machine Spoiler
// the smallest letter. bad input re-prompts; "quit" ends the session.
Transcript play_interactive(const Pda& pda, int k, HumanRole human, std::istream& in,
                            std::ostream& out, const SolveOptions& opts = {});

// replays a transcript move by move, checking legality and the winning
// condition; true when the recorded rounds survive their obligations
bool replay_transcript(const Pda& pda, const Transcript& t, const SolveOptions& opts = {});

} // namespace explor
