#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace explor {

struct TmRule {
    std::string state;
    char read = 0;
    std::string next;
    char write = 0;
    char move = 'R'; // 'L' or 'R'

    bool operator==(const TmRule&) const = default;
};

// single-tape machine; delta must be total on non-halting states
struct TuringMachine {
    std::vector<std::string> states;
    std::vector<char> input_alphabet;
    std::vector<char> tape_alphabet;
    char blank = '_';
    std::vector<TmRule> delta;
    std::string start;
    std::string accept;
    std::string reject;

    bool operator==(const TuringMachine&) const = default;
};

// well-formedness violations; empty means ok
std::vector<std::string> tm_problems(const TuringMachine& tm);

// tape holds cells 0..tape.size(); reading past the end gives blanks
struct TmConfiguration {
    std::string state;
    std::string tape;
    std::size_t head = 0;

    bool operator==(const TmConfiguration&) const = default;
};

TmConfiguration tm_start(const TuringMachine& tm, std::string_view input);

bool tm_halted(const TuringMachine& tm, const TmConfiguration& c);

// one delta application; nullopt when already halted. moving left at the
// left edge keeps the head in place.
std::optional<TmConfiguration> tm_step(const TuringMachine& tm, const TmConfiguration& c);

struct TmRun {
    std::vector<TmConfiguration> trace;
    bool halted = false;
    bool accepted = false;
};

TmRun run_tm(const TuringMachine& tm, std::string_view input, int max_steps);

// configuration snapshot over the window of cells 0..W where W is one past
// the head or the rightmost nonblank cell, whichever is larger; the state
// character sits right before the head cell
std::string id_string(const TuringMachine& tm, const TmConfiguration& c);

// "#ID_0#ID_1#...#ID_N#" with odd-indexed snapshots reversed; only produced
// when the machine halts at an even step index N >= 4 within max_steps
std::optional<std::string> valc_string(const TuringMachine& tm, std::string_view input,
                                       int max_steps);

// true iff s is NOT the encoding of a halting computation of tm
bool invalc_oracle(const TuringMachine& tm, std::string_view s);

// tape symbols, then state characters, then '#'. requires single-character
// state names disjoint from the tape alphabet, none equal to '#'; throws
// EncodingOverflow otherwise.
std::vector<char> encoding_alphabet(const TuringMachine& tm);

// small fixed machine with two working states used by the construction
// demos; halts after 4 steps on inputs of length <= 1 and after 2 steps on
// longer ones
TuringMachine demo_tm();

} // namespace explor
