#pragma once

#include "explor/pda.hpp"
#include "explor/turing.hpp"

namespace explor::testing {

// single state, two letters, two moves per letter: the complete binary
// branching machine, every configuration accepting
inline Pda binary_branch_pda() {
    Pda p;
    p.states = {"q"};
    p.input_alphabet = {'a', 'b'};
    p.stack_alphabet = {"Z"};
    p.initial_state = "q";
    p.initial_stack_symbol = "Z";
    p.accepting = {"q"};
    for (char c : {'a', 'b'}) {
        p.transitions.push_back({"q", c, "Z", "q", {"Z"}});
        p.transitions.push_back({"q", c, "Z", "q", {"Z", "Z"}});
    }
    return p;
}

// one accepting state looping on b: acceptance is revisited on every letter
inline Pda loop_pda() {
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

// epsilon self-loop growing the stack forever; acceptance unreachable.
// useful for exercising budget truncation.
inline Pda eps_pump_pda() {
    Pda p;
    p.states = {"p", "acc"};
    p.input_alphabet = {'a'};
    p.stack_alphabet = {"Z"};
    p.initial_state = "p";
    p.initial_stack_symbol = "Z";
    p.accepting = {"acc"};
    p.transitions.push_back({"p", std::nullopt, "Z", "p", {"Z", "Z"}});
    p.transitions.push_back({"p", 'a', "Z", "p", {"Z"}});
    return p;
}

// six-state machine whose fourth step moves left in the tape interior, so
// the even-to-odd successor check sees a head moving left
inline TuringMachine lmove_tm() {
    TuringMachine tm;
    tm.states = {"A", "B", "C", "D", "Y", "N"};
    tm.input_alphabet = {'0'};
    tm.tape_alphabet = {'0', '_'};
    tm.blank = '_';
    tm.start = "A";
    tm.accept = "Y";
    tm.reject = "N";
    tm.delta = {
        {"A", '_', "B", '0', 'R'}, {"A", '0', "N", '0', 'R'},
        {"B", '_', "C", '0', 'R'}, {"B", '0', "N", '0', 'R'},
        {"C", '_', "D", '0', 'L'}, {"C", '0', "N", '0', 'R'},
        {"D", '0', "Y", '0', 'R'}, {"D", '_', "N", '_', 'R'},
    };
    return tm;
}

} // namespace explor::testing
