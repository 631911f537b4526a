#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace explor {

// one pushdown transition: pops exactly one symbol, pushes at most two.
// push[0] becomes the new top of stack. input == nullopt means an epsilon move.
struct Transition {
    std::string from;
    std::optional<char> input;
    std::string pop;
    std::string to;
    std::vector<std::string> push;

    bool operator==(const Transition&) const = default;
};

struct Pda {
    std::vector<std::string> states;
    std::vector<char> input_alphabet;
    std::vector<std::string> stack_alphabet;
    std::string initial_state;
    std::string initial_stack_symbol;
    std::vector<std::string> accepting;
    std::vector<Transition> transitions;

    bool operator==(const Pda&) const = default;
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool deterministic = false;
    bool eps_free = false;

    bool ok() const { return violations.empty(); }
};

// well-formedness plus the determinism test: at most one move per
// (state, letter, top) and no letter moves wherever an epsilon move exists
// for the same (state, top).
ValidationReport validate(const Pda& pda);

// |states| * |stack symbols|, counting every declared stack symbol
std::size_t size(const Pda& pda);

struct DfaTransition {
    std::string from;
    char input = 0;
    std::string to;

    bool operator==(const DfaTransition&) const = default;
};

// deterministic finite automaton with a total transition map
struct Dfa {
    std::vector<std::string> states;
    std::vector<char> alphabet;
    std::string initial;
    std::vector<std::string> accepting;
    std::vector<DfaTransition> transitions;

    bool operator==(const Dfa&) const = default;
};

// throws Error when the map is not total/deterministic or names are undeclared
void check_dfa(const Dfa& dfa);

const std::string& dfa_next(const Dfa& dfa, const std::string& state, char input);

bool dfa_accepts(const Dfa& dfa, std::string_view word);

// synchronous product; epsilon moves keep the dfa component in place.
// throws AlphabetMismatch unless both input alphabets agree as sets.
Pda product_with_dfa(const Pda& pda, const Dfa& dfa);

} // namespace explor
