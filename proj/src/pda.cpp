#include "explor/pda.hpp"

#include "explor/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace explor {

namespace {

template <typename T>
std::set<T> as_set(const std::vector<T>& xs) {
    return std::set<T>(xs.begin(), xs.end());
}

template <typename T>
std::vector<T> duplicates_of(const std::vector<T>& xs) {
    std::set<T> seen;
    std::vector<T> dups;
    for (const auto& x : xs) {
        if (!seen.insert(x).second) dups.push_back(x);
    }
    return dups;
}

std::string show_input(const std::optional<char>& input) {
    if (!input) return "eps";
    return std::string(1, *input);
}

} // namespace

ValidationReport validate(const Pda& pda) {
    ValidationReport rep;
    auto bad = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

    for (const auto& s : duplicates_of(pda.states)) bad("duplicate state: " + s);
    for (char c : duplicates_of(pda.input_alphabet)) bad(std::string("duplicate input letter: ") + c);
    for (const auto& g : duplicates_of(pda.stack_alphabet)) bad("duplicate stack symbol: " + g);
    for (const auto& s : duplicates_of(pda.accepting)) bad("duplicate accepting state: " + s);

    const auto states = as_set(pda.states);
    const auto letters = as_set(pda.input_alphabet);
    const auto syms = as_set(pda.stack_alphabet);

    if (pda.states.empty()) bad("no states");
    if (!states.count(pda.initial_state)) bad("initial state not declared: " + pda.initial_state);
    if (!syms.count(pda.initial_stack_symbol))
        bad("initial stack symbol not declared: " + pda.initial_stack_symbol);
    for (const auto& s : pda.accepting)
        if (!states.count(s)) bad("accepting state not declared: " + s);

    bool eps_free = true;
    for (std::size_t i = 0; i < pda.transitions.size(); ++i) {
        const auto& t = pda.transitions[i];
        const std::string where = "transition " + std::to_string(i) + " (" + t.from + "," +
                                  show_input(t.input) + "," + t.pop + ")";
        if (!states.count(t.from)) bad(where + ": source state not declared");
        if (!states.count(t.to)) bad(where + ": target state not declared");
        if (t.input && !letters.count(*t.input)) bad(where + ": input letter not declared");
        if (!t.input) eps_free = false;
        if (!syms.count(t.pop)) bad(where + ": popped symbol not declared");
        if (t.push.size() > 2) bad(where + ": pushes more than two symbols");
        for (const auto& g : t.push)
            if (!syms.count(g)) bad(where + ": pushed symbol not declared: " + g);
    }
    rep.eps_free = eps_free;

    // determinism: at most one move per (state, letter, top), and a mode with
    // an epsilon move admits no letter moves at all.
    std::map<std::pair<std::string, std::string>, std::set<std::optional<char>>> by_mode;
    bool det = true;
    for (const auto& t : pda.transitions) {
        auto& inputs = by_mode[{t.from, t.pop}];
        if (!inputs.insert(t.input).second) det = false;
    }
    for (const auto& [mode, inputs] : by_mode) {
        if (inputs.count(std::nullopt) && inputs.size() > 1) det = false;
    }
    rep.deterministic = det && rep.violations.empty();

    return rep;
}

std::size_t size(const Pda& pda) {
    return pda.states.size() * pda.stack_alphabet.size();
}

void check_dfa(const Dfa& dfa) {
    const auto states = as_set(dfa.states);
    const auto letters = as_set(dfa.alphabet);
    if (!states.count(dfa.initial)) throw Error("dfa initial state not declared: " + dfa.initial);
    for (const auto& s : dfa.accepting)
        if (!states.count(s)) throw Error("dfa accepting state not declared: " + s);
    std::map<std::pair<std::string, char>, std::string> next;
    for (const auto& t : dfa.transitions) {
        if (!states.count(t.from)) throw Error("dfa transition from undeclared state: " + t.from);
        if (!states.count(t.to)) throw Error("dfa transition to undeclared state: " + t.to);
        if (!letters.count(t.input))
            throw Error(std::string("dfa transition on undeclared letter: ") + t.input);
        if (!next.emplace(std::pair{t.from, t.input}, t.to).second)
            throw Error("dfa has two transitions from (" + t.from + "," + t.input + ")");
    }
    for (const auto& q : dfa.states)
        for (char a : dfa.alphabet)
            if (!next.count({q, a}))
                throw Error("dfa transition map not total at (" + q + "," + a + ")");
}

const std::string& dfa_next(const Dfa& dfa, const std::string& state, char input) {
    for (const auto& t : dfa.transitions)
        if (t.from == state && t.input == input) return t.to;
    throw Error("dfa has no move from (" + state + "," + input + ")");
}

bool dfa_accepts(const Dfa& dfa, std::string_view word) {
    check_dfa(dfa);
    std::string cur = dfa.initial;
    for (char a : word) cur = dfa_next(dfa, cur, a);
    return std::find(dfa.accepting.begin(), dfa.accepting.end(), cur) != dfa.accepting.end();
}

Pda product_with_dfa(const Pda& pda, const Dfa& dfa) {
    auto vrep = validate(pda);
    if (!vrep.ok()) throw Error("product: pda invalid: " + vrep.violations.front());
    check_dfa(dfa);
    if (as_set(pda.input_alphabet) != as_set(dfa.alphabet))
        throw AlphabetMismatch("product: input alphabets differ");

    // keep every state pair; reachability is not trimmed here
    const auto existing = as_set(pda.states);
    auto pair_name = [&existing](const std::string& q, const std::string& d) {
        std::string name = q + "," + d;
        while (existing.count(name)) name += "'";
        return name;
    };

    Pda out;
    out.input_alphabet = pda.input_alphabet;
    out.stack_alphabet = pda.stack_alphabet;
    out.initial_stack_symbol = pda.initial_stack_symbol;
    for (const auto& q : pda.states)
        for (const auto& d : dfa.states) out.states.push_back(pair_name(q, d));
    out.initial_state = pair_name(pda.initial_state, dfa.initial);
    const auto pda_acc = as_set(pda.accepting);
    const auto dfa_acc = as_set(dfa.accepting);
    for (const auto& q : pda.states)
        for (const auto& d : dfa.states)
            if (pda_acc.count(q) && dfa_acc.count(d)) out.accepting.push_back(pair_name(q, d));

    for (const auto& t : pda.transitions) {
        for (const auto& d : dfa.states) {
            Transition pt;
            pt.input = t.input;
            pt.pop = t.pop;
            pt.push = t.push;
            pt.from = pair_name(t.from, d);
            pt.to = pair_name(t.to, t.input ? dfa_next(dfa, d, *t.input) : d);
            out.transitions.push_back(pt);
        }
    }
    return out;
}

} // namespace explor
