#pragma once

#include "explor/pda.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace explor {

using StateId = int;
using SymId = int;

// stack front() is the top symbol; an empty stack means the run is exhausted
// and no transition applies any more
struct Configuration {
    StateId state = 0;
    std::vector<SymId> stack;

    bool exhausted() const { return stack.empty(); }
    auto operator<=>(const Configuration&) const = default;
};

struct Mode {
    StateId state = 0;
    SymId top = 0;
    auto operator<=>(const Mode&) const = default;
};

struct IndexedMode {
    StateId state = 0;
    SymId top = 0;
    int residue = 0;
    auto operator<=>(const IndexedMode&) const = default;
};

// compiled transition with interned ids
struct CompiledTransition {
    StateId from = 0;
    std::optional<char> input;
    SymId pop = 0;
    StateId to = 0;
    std::vector<SymId> push;
};

// execution engine over a validated Pda: interning, per-mode transition
// slots, single-step application
class Machine {
public:
    explicit Machine(Pda pda);

    const Pda& pda() const { return pda_; }

    std::size_t num_states() const { return state_names_.size(); }
    std::size_t num_syms() const { return sym_names_.size(); }

    StateId state_id(const std::string& name) const;
    SymId sym_id(const std::string& name) const;
    const std::string& state_name(StateId s) const { return state_names_.at(s); }
    const std::string& sym_name(SymId g) const { return sym_names_.at(g); }

    bool accepting_state(StateId s) const { return accepting_.at(s); }
    bool accepting(const Configuration& c) const { return accepting_.at(c.state); }

    Configuration initial() const;

    const CompiledTransition& transition(int id) const { return compiled_.at(id); }
    std::size_t num_transitions() const { return compiled_.size(); }

    // ids of epsilon transitions enabled at c (empty when exhausted)
    const std::vector<int>& eps_moves_at(const Configuration& c) const;
    // ids of transitions reading a enabled at c (empty when exhausted)
    const std::vector<int>& letter_moves_at(const Configuration& c, char a) const;

    // applies transition id to c; throws IllegalMove unless enabled there
    Configuration apply(const Configuration& c, int id) const;

private:
    Pda pda_;
    std::vector<std::string> state_names_;
    std::vector<std::string> sym_names_;
    std::map<std::string, StateId> state_ids_;
    std::map<std::string, SymId> sym_ids_;
    std::vector<bool> accepting_;
    std::vector<CompiledTransition> compiled_;
    std::vector<std::vector<int>> eps_at_;                 // [state * num_syms + sym]
    std::map<char, std::vector<std::vector<int>>> letter_at_;
    std::vector<int> empty_slot_;
};

// a run records every configuration visited and the transition ids taken.
// word holds the letters consumed, in order.
struct Run {
    std::string word;
    std::vector<Configuration> configs;
    std::vector<int> transitions;

    bool operator==(const Run&) const = default;
};

Run initial_run(const Machine& m);

// replays the transition sequence and checks configs and word agree with it
bool valid_run(const Machine& m, const Run& r);

// one way to consume a single letter from a configuration: a chain of
// epsilon moves followed by the letter move. passed_accepting reports an
// accepting configuration seen at the start or anywhere before the letter.
struct MoveOption {
    Configuration to;
    std::vector<int> path;
    bool passed_accepting = false;
};

struct LetterMoves {
    std::vector<MoveOption> moves;          // deduplicated by destination
    bool truncated = false;                 // eps budget cut the move search
    bool eps_accept_reachable = false;      // accepting config on eps moves alone
    std::vector<int> eps_accept_path;       // shortest eps path to one, empty if start accepts
    bool acc_truncated = false;             // budget cut before accept reachability settled
};

// all ways to consume letter a from c with at most eps_budget epsilon moves
// first. per destination keeps the best option: accepting-passing preferred,
// then shortest, then lexicographically least transition path.
LetterMoves letter_moves(const Machine& m, const Configuration& c, char a, int eps_budget);

struct ReadLetter {
    std::vector<std::pair<Configuration, std::vector<int>>> successors;
    bool budget_exceeded = false;
};

ReadLetter read_letter(const Machine& m, const Configuration& c, char a, int eps_budget);

struct RunSet {
    std::vector<Run> runs;
    bool truncated = false;
};

// every run from the initial configuration consuming exactly word, with each
// epsilon segment (between letters, plus the trailing one) capped at
// eps_budget moves. runs differing only in trailing epsilon moves are
// distinct entries.
RunSet enumerate_runs(const Machine& m, std::string_view word, int eps_budget);

enum class MembershipVerdict { Accept, Reject, Unknown };

// bounded search for an accepting run on word. Unknown only when the eps
// budget truncated the search and no accepting run was found within it.
MembershipVerdict bounded_accepts(const Machine& m, std::string_view word, int eps_budget);

// positions s of the run such that the stack never gets shorter than it is
// at s from there on (the final position always qualifies)
std::vector<std::size_t> steps_of_run(const Run& r);

// result = prefix_source.configs[0..s_prefix] followed by the replay of
// suffix_source.transitions[s_suffix..]. both positions must be steps of
// their runs (NotAStep) and the two configurations must agree on state and
// top of stack and not be exhausted (ModeMismatch). splice(m, r, s, r, s)
// reproduces r.
Run splice(const Machine& m, const Run& suffix_source, std::size_t s_suffix,
           const Run& prefix_source, std::size_t s_prefix);

struct ExtensionWitness {
    Run run;
    std::size_t prefix_len = 0;
};

// pairs (i, j) with i < j such that one accepting run on base fill^j also
// passes an accepting configuration right after base fill^i
struct ExtensionTable {
    std::string base;
    std::string fill;
    std::map<std::pair<int, int>, ExtensionWitness> pairs;
    bool truncated = false;
};

ExtensionTable accepting_run_extensions(const Pda& pda, std::string_view base,
                                        std::string_view fill, int max_i, int max_j,
                                        int eps_budget = 64);

// largest number of transitions sharing (state, label, top), labels counting
// each letter and epsilon separately; at least 1
int max_nondet_branching(const Pda& pda);

} // namespace explor
