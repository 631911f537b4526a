#pragma once

#include "explor/pda.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace explor {

struct CfgSymbol {
    bool is_terminal = false;
    char terminal = 0;
    int nonterminal = -1;

    bool operator==(const CfgSymbol&) const = default;
};

CfgSymbol term_sym(char c);
CfgSymbol nt_sym(int id);

struct CfgProduction {
    int head = 0;
    std::vector<CfgSymbol> body; // empty body means epsilon

    bool operator==(const CfgProduction&) const = default;
};

struct Cfg {
    std::vector<std::string> nonterminal_names;
    std::vector<char> terminals;
    std::vector<CfgProduction> productions;
    int start = 0;

    bool operator==(const Cfg&) const = default;
};

// rewires final-state acceptance into empty-stack acceptance: fresh bottom
// symbol and start state, plus drain transitions from the old accepting
// states. the result has no accepting states; its runs empty the stack
// exactly on words the input machine accepts.
Pda to_empty_stack(const Pda& pda);

struct CfgLimits {
    std::size_t max_nonterminals = 200000;
    std::size_t max_productions = 2000000;
};

// triple construction over the empty-stack form, then normalization in the
// order: epsilon removal, unit elimination, useless-symbol elimination,
// binarization with terminal separation, fresh start symbol (with an
// epsilon production when the empty word is in the language). the result
// has only A -> B C, A -> a, and S -> epsilon productions. throws
// GrammarLimit when the caps are exceeded.
Cfg to_cfg(const Pda& pda, const CfgLimits& limits = {});

// one production per line, "Head -> s1 s2" ("Head -> ." for epsilon),
// in a stable order
std::string dump(const Cfg& g);

// exact membership via a cached grammar and CYK; results are memoized per
// machine and word
bool exact_accepts(const Pda& pda, std::string_view w);

} // namespace explor
