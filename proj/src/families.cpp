#include "explor/families.hpp"

#include "explor/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

namespace explor {

namespace {

std::string dec(int v) { return std::to_string(v); }

} // namespace

Pda multiple_dpda(int i) {
    if (i < 1) throw ConfigError("multiple_dpda needs i >= 1");
    Pda p;
    p.states = {"q0", "qa", "qb"};
    for (int j = 1; j <= i - 1; ++j) p.states.push_back("p" + dec(j));
    p.states.push_back("qf");
    p.input_alphabet = {'a', 'b'};
    p.stack_alphabet = {"Z", "X"};
    p.initial_state = "q0";
    p.initial_stack_symbol = "Z";
    p.accepting = {"q0", "qf"};

    p.transitions.push_back({"q0", 'a', "Z", "qa", {"X", "Z"}});
    p.transitions.push_back({"qa", 'a', "X", "qa", {"X", "X"}});
    if (i == 1) {
        p.transitions.push_back({"qa", 'b', "X", "qb", {}});
        p.transitions.push_back({"qb", 'b', "X", "qb", {}});
    } else {
        p.transitions.push_back({"qa", 'b', "X", "p1", {"X"}});
        for (int j = 1; j <= i - 2; ++j)
            p.transitions.push_back({"p" + dec(j), 'b', "X", "p" + dec(j + 1), {"X"}});
        p.transitions.push_back({"p" + dec(i - 1), 'b', "X", "qb", {}});
        p.transitions.push_back({"qb", 'b', "X", "p1", {"X"}});
    }
    p.transitions.push_back({"qb", std::nullopt, "Z", "qf", {"Z"}});
    return p;
}

Pda union_pda(int k) {
    if (k < 1) throw ConfigError("union_pda needs k >= 1");
    Pda p;
    p.states = {"u"};
    p.input_alphabet = {'a', 'b'};
    p.stack_alphabet = {"Z"};
    p.initial_state = "u";
    p.initial_stack_symbol = "Z";
    p.accepting = {"u"};

    for (int i = 1; i <= k + 1; ++i) {
        std::string pre = "d" + dec(i) + "_";
        Pda part = multiple_dpda(i);
        for (const auto& q : part.states) p.states.push_back(pre + q);
        p.stack_alphabet.push_back(pre + "X");
        for (const auto& f : part.accepting) p.accepting.push_back(pre + f);
        auto sym = [&](const std::string& x) { return x == "Z" ? std::string("Z") : pre + x; };
        for (const auto& t : part.transitions) {
            Transition nt;
            nt.from = pre + t.from;
            nt.input = t.input;
            nt.pop = sym(t.pop);
            nt.to = pre + t.to;
            for (const auto& x : t.push) nt.push.push_back(sym(x));
            p.transitions.push_back(nt);
        }
        p.transitions.push_back({"u", std::nullopt, "Z", pre + "q0", {"Z"}});
    }
    return p;
}

Pda block_pda() {
    Pda p;
    p.states = {"at_boundary", "at_boundary_seen_empty", "in_block", "in_block_seen_empty",
                "count",       "closed",                 "closed_in", "popping",
                "matched"};
    p.input_alphabet = {'a', '#', 'b'};
    p.stack_alphabet = {"Z", "X", "Xf"};
    p.initial_state = "at_boundary";
    p.initial_stack_symbol = "Z";
    p.accepting = {"at_boundary_seen_empty", "matched"};

    auto add = [&](std::string f, char c, std::string pop, std::string to,
                   std::vector<std::string> push) {
        p.transitions.push_back({std::move(f), c, std::move(pop), std::move(to), std::move(push)});
    };
    // skim blocks that are not the match
    add("at_boundary", 'a', "Z", "in_block", {"Z"});
    add("at_boundary", '#', "Z", "at_boundary_seen_empty", {"Z"});
    add("in_block", 'a', "Z", "in_block", {"Z"});
    add("in_block", '#', "Z", "at_boundary", {"Z"});
    add("at_boundary_seen_empty", 'a', "Z", "in_block_seen_empty", {"Z"});
    add("at_boundary_seen_empty", '#', "Z", "at_boundary_seen_empty", {"Z"});
    add("in_block_seen_empty", 'a', "Z", "in_block_seen_empty", {"Z"});
    add("in_block_seen_empty", '#', "Z", "at_boundary_seen_empty", {"Z"});
    // guess: this block is the one the b-run must match
    add("at_boundary", 'a', "Z", "count", {"Xf", "Z"});
    add("at_boundary_seen_empty", 'a', "Z", "count", {"Xf", "Z"});
    add("count", 'a', "Xf", "count", {"X", "Xf"});
    add("count", 'a', "X", "count", {"X", "X"});
    add("count", '#', "Xf", "closed", {"Xf"});
    add("count", '#', "X", "closed", {"X"});
    // later blocks pass by while the count is parked on the stack
    add("closed", 'a', "X", "closed_in", {"X"});
    add("closed", 'a', "Xf", "closed_in", {"Xf"});
    add("closed", '#', "X", "closed", {"X"});
    add("closed", '#', "Xf", "closed", {"Xf"});
    add("closed_in", 'a', "X", "closed_in", {"X"});
    add("closed_in", 'a', "Xf", "closed_in", {"Xf"});
    add("closed_in", '#', "X", "closed", {"X"});
    add("closed_in", '#', "Xf", "closed", {"Xf"});
    // the b-run pops the count; the marker at the bottom closes it
    add("closed", 'b', "X", "popping", {});
    add("closed", 'b', "Xf", "matched", {});
    add("popping", 'b', "X", "popping", {});
    add("popping", 'b', "Xf", "matched", {});
    return p;
}

Dfa block_regular_dfa(int k) {
    if (k < 0) throw ConfigError("block_regular_dfa needs k >= 0");
    Dfa d;
    for (int j = 0; j <= k; ++j) d.states.push_back("r" + dec(j));
    d.states.push_back("fin");
    d.states.push_back("dead");
    d.alphabet = {'a', '#', 'b'};
    d.initial = "r0";
    d.accepting = {"fin"};
    for (int j = 0; j <= k; ++j) {
        std::string q = "r" + dec(j);
        d.transitions.push_back({q, 'a', q});
        d.transitions.push_back({q, '#', j == k ? "fin" : "r" + dec(j + 1)});
        d.transitions.push_back({q, 'b', "dead"});
    }
    d.transitions.push_back({"fin", 'b', "fin"});
    d.transitions.push_back({"fin", 'a', "dead"});
    d.transitions.push_back({"fin", '#', "dead"});
    d.transitions.push_back({"dead", 'a', "dead"});
    d.transitions.push_back({"dead", '#', "dead"});
    d.transitions.push_back({"dead", 'b', "dead"});
    return d;
}

Pda relabel_extension(const Pda& pda, char b, char c) {
    ValidationReport rep = validate(pda);
    if (!rep.ok()) throw Error("invalid machine: " + rep.violations.front());
    if (std::find(pda.input_alphabet.begin(), pda.input_alphabet.end(), b) ==
        pda.input_alphabet.end())
        throw AlphabetMismatch(std::string("letter ") + b + " is not readable");
    if (std::find(pda.input_alphabet.begin(), pda.input_alphabet.end(), c) !=
        pda.input_alphabet.end())
        throw LetterClash(std::string("letter ") + c + " is already readable");

    std::set<std::string> taken(pda.states.begin(), pda.states.end());
    std::map<std::string, std::string> primed;
    for (const auto& q : pda.states) {
        std::string cand = q + "'";
        while (taken.count(cand)) cand += "'";
        taken.insert(cand);
        primed[q] = cand;
    }

    Pda out = pda;
    out.input_alphabet.push_back(c);
    for (const auto& q : pda.states) out.states.push_back(primed[q]);
    out.accepting.clear();
    for (const auto& f : pda.accepting) out.accepting.push_back(primed[f]);

    for (const auto& t : pda.transitions) {
        if (t.input && *t.input != b) continue; // other letters are not readable in the copy
        Transition nt = t;
        nt.from = primed[t.from];
        nt.to = primed[t.to];
        if (t.input) nt.input = c;
        out.transitions.push_back(nt);
    }
    for (const auto& f : pda.accepting) {
        for (const auto& x : pda.stack_alphabet) {
            out.transitions.push_back({f, std::nullopt, x, primed[f], {x}});
        }
    }
    return out;
}

namespace {

// binary countdown over stack bits, low bit on top. consumes exactly n-1
// letters after entry, then moves to exit with the bottom restored.
std::string add_counter_gadget(Pda& p, const std::string& prefix, int n,
                               const std::string& exit_state, bool accepting) {
    int v = n - 2;
    int bits = 0;
    while ((v >> bits) != 0) ++bits;

    auto state = [&](const std::string& base, int idx) { return prefix + base + dec(idx); };
    std::vector<std::string> added;
    for (int j = 0; j < bits; ++j) added.push_back(state("ld", j));
    std::string rd = prefix + "rd";
    added.push_back(rd);
    for (int m = 1; m <= bits; ++m) added.push_back(state("pp", m));
    for (int m = 1; m <= bits - 1; ++m) added.push_back(state("ps", m));
    for (const auto& q : added) {
        p.states.push_back(q);
        if (accepting) p.accepting.push_back(q);
    }

    const std::vector<std::string> all_syms = {"0", "1", "Z"};
    for (int j = 0; j < bits; ++j) {
        std::string bit = ((v >> (bits - 1 - j)) & 1) ? "1" : "0";
        std::string next = j + 1 < bits ? state("ld", j + 1) : rd;
        for (const auto& x : all_syms)
            p.transitions.push_back({state("ld", j), std::nullopt, x, next, {bit, x}});
    }
    for (char c : {'0', '1'}) {
        if (bits == 0) {
            p.transitions.push_back({rd, c, "Z", exit_state, {"Z"}});
            continue;
        }
        p.transitions.push_back({rd, c, "0", state("pp", 1), {}});
        p.transitions.push_back({rd, c, "1", rd, {"0"}});
    }
    for (int m = 1; m <= bits; ++m) {
        if (m < bits)
            p.transitions.push_back({state("pp", m), std::nullopt, "0", state("pp", m + 1), {}});
        if (m <= bits - 1)
            p.transitions.push_back(
                {state("pp", m), std::nullopt, "1", m == 1 ? rd : state("ps", m - 1), {"1", "0"}});
    }
    if (bits >= 1)
        p.transitions.push_back({state("pp", bits), std::nullopt, "Z", exit_state, {"Z"}});
    for (int m = 1; m <= bits - 1; ++m) {
        std::string next = m == 1 ? rd : state("ps", m - 1);
        for (const auto& x : {std::string("0"), std::string("1")})
            p.transitions.push_back({state("ps", m), std::nullopt, x, next, {"1", x}});
    }
    return bits > 0 ? state("ld", 0) : rd;
}

} // namespace

Pda suffix_one_pda(int n) {
    if (n < 1) throw ConfigError("suffix_one_pda needs n >= 1");
    Pda p;
    p.input_alphabet = {'0', '1'};
    p.stack_alphabet = {"0", "1", "Z"};
    p.initial_state = "wait";
    p.initial_stack_symbol = "Z";
    p.states = {"wait", "hit", "miss"};
    p.accepting = {"hit"};

    if (n == 1) {
        p.transitions.push_back({"wait", '1', "Z", "hit", {"Z"}});
        p.transitions.push_back({"wait", '0', "Z", "miss", {"Z"}});
    } else {
        std::string a_entry = add_counter_gadget(p, "a_", n, "hit", false);
        std::string d_entry = add_counter_gadget(p, "d_", n, "miss", false);
        p.transitions.push_back({"wait", '0', "Z", "wait", {"Z"}});
        p.transitions.push_back({"wait", '1', "Z", "wait", {"Z"}});
        p.transitions.push_back({"wait", '1', "Z", a_entry, {"Z"}});
        p.transitions.push_back({"wait", '0', "Z", d_entry, {"Z"}});
    }
    p.transitions.push_back({"hit", std::nullopt, "Z", "wait", {"Z"}});
    p.transitions.push_back({"miss", std::nullopt, "Z", "wait", {"Z"}});
    return p;
}

Pda mod_pda(int n) {
    if (n < 1) throw ConfigError("mod_pda needs n >= 1");
    Pda p;
    p.input_alphabet = {'0', '1'};
    p.stack_alphabet = {"0", "1", "Z"};
    p.initial_stack_symbol = "Z";

    if (n == 1) {
        p.states = {"blk"};
        p.initial_state = "blk";
        p.accepting = {"blk"};
        p.transitions.push_back({"blk", '1', "Z", "blk", {"Z"}});
        return p;
    }

    p.states = {"blk", "clear"};
    p.accepting = {"blk"};
    std::string a_entry = add_counter_gadget(p, "a_", n, "blk", true);
    std::string b_entry = add_counter_gadget(p, "b_", n, "blk", false);
    p.initial_state = a_entry;

    // guess where the short prefix ends; drain the leftover count
    for (const auto& x : {std::string("0"), std::string("1"), std::string("Z")})
        p.transitions.push_back({"a_rd", std::nullopt, x, "clear", {x}});
    p.transitions.push_back({"clear", std::nullopt, "0", "clear", {}});
    p.transitions.push_back({"clear", std::nullopt, "1", "clear", {}});
    p.transitions.push_back({"clear", std::nullopt, "Z", "blk", {"Z"}});

    p.transitions.push_back({"blk", '1', "Z", b_entry, {"Z"}});
    return p;
}

// ---------------------------------------------------------------------------
// invalid computation strings

namespace {

enum InvBranch { BrInit = 0, BrB = 1, BrC = 2, BrReg = 3, BrSink = 4 };

enum InvPhase {
    PhLead,
    PhPush,
    PhBndCmp,
    PhCmpV,
    PhPairedR,
    PhPairedS,
    PhLCand,
    PhGrowChk,
    PhLPaired,
    PhMatchU,
    PhEdgeEnd,
    PhBndPush,
    PhSkim0,
    PhBndPushO,
    PhPushOdd,
    PhBndCmpE,
    PhMatchU1,
    PhRGotS,
    PhLGotQ,
    PhLGotA,
    PhEdgeGotQ,
    PhMatchWFirst,
    PhMatchWPlain,
    PhPadDone,
    PhRegLead,
    PhRegBlk,
    PhRegBnd,
};

enum InvSub { SubExpect, SubJustA, SubBlankDone, SubDigits, SubNotB0 };

struct InvState {
    int branch = BrInit;
    int phase = PhLead;
    int sub = SubExpect;
    int sc = 0;
    bool halt_cur = false;
    int cap = 0;
    bool last_halt = false;
    int parity = 0;
    char p = 0;
    char r1 = 0;
    char r2 = 0;
    char r3 = 0;
    char r4 = 0;
    bool cmp_halt = false;

    auto operator<=>(const InvState&) const = default;
};

enum InvOp { OpKeep, OpPop, OpPush };

struct InvMove {
    InvState to;
    int op = OpKeep;
    char push = 0;
};

struct TmCtx {
    char start_c = 0;
    char blank = 0;
    char accept_c = 0;
    char reject_c = 0;
    std::set<char> tape;
    std::set<char> state_chars;
    std::set<char> input_chars;
    std::map<std::pair<char, char>, std::tuple<char, char, char>> rules;

    bool is_tape(char c) const { return tape.count(c) != 0; }
    bool is_state(char c) const { return state_chars.count(c) != 0; }
    bool is_input(char c) const { return input_chars.count(c) != 0; }
    bool halting(char q) const { return q == accept_c || q == reject_c; }
    bool rule_is(char q, char s, char qp, char sp, char mv) const {
        auto it = rules.find({q, s});
        return it != rules.end() && it->second == std::make_tuple(qp, sp, mv);
    }
};

int inc_cap(int c) { return c < 5 ? c + 1 : 5; }

InvMove sink_move() {
    InvState s;
    s.branch = BrSink;
    s.phase = 0;
    s.sub = 0;
    return {s, OpKeep, 0};
}

InvState fresh(int branch, int phase, int cap, bool last_halt) {
    InvState s;
    s.branch = branch;
    s.phase = phase;
    s.sub = 0;
    s.cap = cap;
    s.last_halt = last_halt;
    return s;
}

// one character of a block, with the shape trackers; used by all push or
// skim style phases. op tells how the branch treats the stack.
InvMove block_char(const TmCtx& t, const InvState& s, char in, int op) {
    InvState n = s;
    if (s.sub == SubNotB0) {
        if (t.is_state(in)) {
            if (s.sc != 0) return sink_move();
            n.sc = 1;
            n.halt_cur = s.halt_cur || t.halting(in);
        } else if (!t.is_tape(in)) {
            return sink_move();
        }
    } else {
        switch (s.sub) {
        case SubExpect:
            if (in != t.start_c) return sink_move();
            n.sub = SubJustA;
            n.sc = 1;
            n.halt_cur = t.halting(in);
            break;
        case SubJustA:
            if (in == t.blank) n.sub = SubBlankDone;
            else if (t.is_input(in)) n.sub = SubDigits;
            else return sink_move();
            break;
        case SubBlankDone:
            return sink_move();
        case SubDigits:
            if (!t.is_input(in)) return sink_move();
            break;
        default:
            return sink_move();
        }
    }
    return {n, op, op == OpPush ? in : char(0)};
}

bool block_done(const InvState& s) {
    return s.sub == SubNotB0 ? s.sc == 1 : (s.sub == SubBlankDone || s.sub == SubDigits);
}

// branch b comparison dispatch; p == 0 marks the first position of the block
InvMove cmp_v(const TmCtx& t, const InvState& s, char p, char in, char top) {
    if (in == '#' || top == 0) return sink_move();
    bool ist = t.is_state(in);
    bool tst = t.is_state(top);
    if (!ist && !tst) {
        if (in == top) {
            InvState n = fresh(BrB, PhCmpV, s.cap, s.last_halt);
            n.p = in;
            return {n, OpPop, 0};
        }
        InvState n = fresh(BrB, PhLCand, s.cap, s.last_halt);
        n.r1 = in;  // written char
        n.r2 = top; // scanned char
        return {n, OpPop, 0};
    }
    if (p == 0) return sink_move(); // a valid snapshot never ends with its state
    if (ist && !tst) {
        InvState n = fresh(BrB, PhPairedR, s.cap, s.last_halt);
        n.r1 = in;  // next state
        n.r2 = top; // scanned char
        return {n, OpPop, 0};
    }
    if (!ist && tst) {
        InvState n = fresh(BrB, PhLPaired, s.cap, s.last_halt);
        n.r1 = p;   // written char
        n.r2 = p;   // scanned char
        n.r3 = in;  // char left of the head
        n.r4 = top; // old state
        return {n, OpPop, 0};
    }
    InvState n = fresh(BrB, PhPairedS, s.cap, s.last_halt);
    n.r1 = top; // old state
    n.r2 = in;  // next state
    n.r3 = p;   // scanned char
    return {n, OpPop, 0};
}

InvMove step_b(const TmCtx& t, const InvState& s, char in, char top) {
    switch (s.phase) {
    case PhLead: {
        if (in != '#') return sink_move();
        InvState n = fresh(BrB, PhPush, 0, false);
        n.sub = SubExpect;
        return {n, OpKeep, 0};
    }
    case PhPush: {
        if (in == '#') {
            if (!block_done(s)) return sink_move();
            return {fresh(BrB, PhBndCmp, inc_cap(s.cap), s.halt_cur), OpKeep, 0};
        }
        return block_char(t, s, in, OpPush);
    }
    case PhBndCmp:
        return cmp_v(t, s, 0, in, top);
    case PhCmpV:
        return cmp_v(t, s, s.p, in, top);
    case PhPairedR: {
        if (top != 0 && t.is_state(top) && t.is_tape(in) && t.rule_is(top, s.r2, s.r1, in, 'R')) {
            InvState n = fresh(BrB, PhMatchU, s.cap, s.last_halt);
            n.cmp_halt = t.halting(s.r1);
            return {n, OpPop, 0};
        }
        return sink_move();
    }
    case PhPairedS: {
        if (t.is_tape(in)) {
            if (t.rule_is(s.r1, s.r3, s.r2, in, 'R')) {
                InvState n = fresh(BrB, PhMatchU, s.cap, s.last_halt);
                n.cmp_halt = t.halting(s.r2);
                return {n, OpKeep, 0};
            }
            return sink_move();
        }
        if (in == '#' && top == 0 && t.rule_is(s.r1, s.r3, s.r2, s.r3, 'L')) {
            return {fresh(BrB, PhBndPush, inc_cap(s.cap), t.halting(s.r2)), OpKeep, 0};
        }
        return sink_move();
    }
    case PhLCand: {
        if (top == 0 || !t.is_state(top)) return sink_move();
        if (t.is_tape(in)) {
            InvState n = fresh(BrB, PhLPaired, s.cap, s.last_halt);
            n.r1 = s.r1;
            n.r2 = s.r2;
            n.r3 = in;
            n.r4 = top;
            return {n, OpPop, 0};
        }
        if (t.is_state(in)) {
            if (s.r1 == t.blank) {
                InvState n = fresh(BrB, PhGrowChk, s.cap, s.last_halt);
                n.r1 = top;  // old state
                n.r2 = in;   // next state
                n.r3 = s.r2; // scanned char
                return {n, OpPop, 0};
            }
            if (t.rule_is(top, s.r2, in, s.r1, 'L')) {
                InvState n = fresh(BrB, PhEdgeEnd, s.cap, s.last_halt);
                n.cmp_halt = t.halting(in);
                return {n, OpPop, 0};
            }
        }
        return sink_move();
    }
    case PhGrowChk: {
        if (t.is_tape(in) && t.rule_is(s.r1, s.r3, s.r2, in, 'R')) {
            InvState n = fresh(BrB, PhMatchU, s.cap, s.last_halt);
            n.cmp_halt = t.halting(s.r2);
            return {n, OpKeep, 0};
        }
        return sink_move();
    }
    case PhLPaired: {
        if (t.is_state(in) && top != 0 && t.is_tape(top) && top == s.r3 &&
            t.rule_is(s.r4, s.r2, in, s.r1, 'L')) {
            InvState n = fresh(BrB, PhMatchU, s.cap, s.last_halt);
            n.cmp_halt = t.halting(in);
            return {n, OpPop, 0};
        }
        return sink_move();
    }
    case PhMatchU: {
        if (in == '#') {
            if (top == 0) return {fresh(BrB, PhBndPush, inc_cap(s.cap), s.cmp_halt), OpKeep, 0};
            return sink_move();
        }
        if (t.is_tape(in) && in == top) {
            InvState n = fresh(BrB, PhMatchU, s.cap, s.last_halt);
            n.cmp_halt = s.cmp_halt;
            return {n, OpPop, 0};
        }
        return sink_move();
    }
    case PhEdgeEnd: {
        if (in == '#' && top == 0)
            return {fresh(BrB, PhBndPush, inc_cap(s.cap), s.cmp_halt), OpKeep, 0};
        return sink_move();
    }
    case PhBndPush: {
        if (in == '#') return sink_move();
        InvState base = fresh(BrB, PhPush, s.cap, s.last_halt);
        base.sub = SubNotB0;
        return block_char(t, base, in, OpPush);
    }
    default:
        return sink_move();
    }
}

// c side forward comparison; first marks the position right after the block
// boundary where a left move at the edge may start with two state chars
InvMove match_u1(const TmCtx& t, const InvState& s, bool first, char in, char top) {
    if (in == '#' || top == 0) return sink_move();
    bool ist = t.is_state(in);
    bool tst = t.is_state(top);
    if (!ist && !tst) {
        if (in == top) return {fresh(BrC, PhMatchU1, s.cap, s.last_halt), OpPop, 0};
        return sink_move();
    }
    if (!ist && tst) {
        InvState n = fresh(BrC, PhRGotS, s.cap, s.last_halt);
        n.r1 = in;  // written char
        n.r2 = top; // old state
        return {n, OpPop, 0};
    }
    if (ist && !tst) {
        InvState n = fresh(BrC, PhLGotQ, s.cap, s.last_halt);
        n.r1 = in;  // next state
        n.r2 = top; // char left of the head
        return {n, OpPop, 0};
    }
    if (first) {
        InvState n = fresh(BrC, PhEdgeGotQ, s.cap, s.last_halt);
        n.r1 = in;  // next state
        n.r2 = top; // old state
        return {n, OpPop, 0};
    }
    return sink_move();
}

InvMove step_c(const TmCtx& t, const InvState& s, char in, char top) {
    switch (s.phase) {
    case PhLead: {
        if (in != '#') return sink_move();
        InvState n = fresh(BrC, PhSkim0, 0, false);
        n.sub = SubExpect;
        return {n, OpKeep, 0};
    }
    case PhSkim0: {
        if (in == '#') {
            if (s.sub != SubBlankDone && s.sub != SubDigits) return sink_move();
            return {fresh(BrC, PhBndPushO, 1, s.halt_cur), OpKeep, 0};
        }
        return block_char(t, s, in, OpKeep);
    }
    case PhBndPushO: {
        if (in == '#') return sink_move();
        InvState base = fresh(BrC, PhPushOdd, s.cap, s.last_halt);
        base.sub = SubNotB0;
        return block_char(t, base, in, OpPush);
    }
    case PhPushOdd: {
        if (in == '#') {
            if (s.sc != 1) return sink_move();
            return {fresh(BrC, PhBndCmpE, inc_cap(s.cap), s.halt_cur), OpKeep, 0};
        }
        return block_char(t, s, in, OpPush);
    }
    case PhBndCmpE:
        return match_u1(t, s, true, in, top);
    case PhMatchU1:
        return match_u1(t, s, false, in, top);
    case PhRGotS: {
        if (top != 0 && t.is_state(in) && t.is_tape(top) && t.rule_is(s.r2, top, in, s.r1, 'R')) {
            InvState n = fresh(BrC, PhMatchWFirst, s.cap, s.last_halt);
            n.cmp_halt = t.halting(in);
            return {n, OpPop, 0};
        }
        return sink_move();
    }
    case PhLGotQ: {
        if (t.is_tape(in) && in == s.r2 && top != 0 && t.is_state(top)) {
            InvState n = fresh(BrC, PhLGotA, s.cap, s.last_halt);
            n.r1 = s.r1; // next state
            n.r2 = top;  // old state
            return {n, OpPop, 0};
        }
        return sink_move();
    }
    case PhLGotA:
    case PhEdgeGotQ: {
        if (t.is_tape(in) && top != 0 && t.is_tape(top) && t.rule_is(s.r2, top, s.r1, in, 'L')) {
            InvState n = fresh(BrC, PhMatchWPlain, s.cap, s.last_halt);
            n.cmp_halt = t.halting(s.r1);
            return {n, OpPop, 0};
        }
        return sink_move();
    }
    case PhMatchWFirst: {
        if (t.is_tape(in) && top != 0 && in == top) {
            InvState n = fresh(BrC, PhMatchWPlain, s.cap, s.last_halt);
            n.cmp_halt = s.cmp_halt;
            return {n, OpPop, 0};
        }
        if (in == t.blank && top == 0) {
            InvState n = fresh(BrC, PhPadDone, s.cap, s.last_halt);
            n.cmp_halt = s.cmp_halt;
            return {n, OpKeep, 0};
        }
        return sink_move();
    }
    case PhMatchWPlain: {
        if (t.is_tape(in) && top != 0 && in == top) {
            InvState n = fresh(BrC, PhMatchWPlain, s.cap, s.last_halt);
            n.cmp_halt = s.cmp_halt;
            return {n, OpPop, 0};
        }
        if (in == '#' && top == 0)
            return {fresh(BrC, PhBndPushO, inc_cap(s.cap), s.cmp_halt), OpKeep, 0};
        return sink_move();
    }
    case PhPadDone: {
        if (in == '#') return {fresh(BrC, PhBndPushO, inc_cap(s.cap), s.cmp_halt), OpKeep, 0};
        return sink_move();
    }
    default:
        return sink_move();
    }
}

InvMove step_reg(const TmCtx& t, const InvState& s, char in, char top) {
    (void)top;
    switch (s.phase) {
    case PhRegLead: {
        if (in != '#') return sink_move();
        InvState n = fresh(BrReg, PhRegBlk, 0, false);
        n.sub = SubExpect;
        return {n, OpKeep, 0};
    }
    case PhRegBlk: {
        if (in == '#') {
            if (!block_done(s)) return sink_move();
            InvState n = fresh(BrReg, PhRegBnd, inc_cap(s.cap), s.halt_cur);
            n.parity = s.parity ^ 1;
            return {n, OpKeep, 0};
        }
        return block_char(t, s, in, OpKeep);
    }
    case PhRegBnd: {
        if (in == '#') return sink_move();
        InvState base = fresh(BrReg, PhRegBlk, s.cap, s.last_halt);
        base.sub = SubNotB0;
        base.parity = s.parity;
        return block_char(t, base, in, OpKeep);
    }
    default:
        return sink_move();
    }
}

InvMove inv_step(const TmCtx& t, const InvState& s, char in, char top) {
    switch (s.branch) {
    case BrB:
        return step_b(t, s, in, top);
    case BrC:
        return step_c(t, s, in, top);
    case BrReg:
        return step_reg(t, s, in, top);
    default:
        return sink_move();
    }
}

bool inv_rejecting_end(const InvState& s) {
    if (s.branch == BrB) return s.phase == PhBndCmp && s.cap == 5 && s.last_halt;
    if (s.branch == BrC) return s.phase == PhBndPushO && s.cap == 5 && s.last_halt;
    if (s.branch == BrReg)
        return s.phase == PhRegBnd && s.parity == 1 && s.cap == 5 && s.last_halt;
    return false;
}

const char* inv_phase_name(int ph) {
    switch (ph) {
    case PhLead: return "lead";
    case PhPush: return "push";
    case PhBndCmp: return "bnd_cmp";
    case PhCmpV: return "cmp";
    case PhPairedR: return "paired_r";
    case PhPairedS: return "paired_s";
    case PhLCand: return "l_cand";
    case PhGrowChk: return "grow_chk";
    case PhLPaired: return "l_paired";
    case PhMatchU: return "match_u";
    case PhEdgeEnd: return "edge_end";
    case PhBndPush: return "bnd_push";
    case PhSkim0: return "skim0";
    case PhBndPushO: return "bnd_push";
    case PhPushOdd: return "push";
    case PhBndCmpE: return "bnd_cmp";
    case PhMatchU1: return "match_u";
    case PhRGotS: return "r_got_s";
    case PhLGotQ: return "l_got_q";
    case PhLGotA: return "l_got_a";
    case PhEdgeGotQ: return "edge_got_q";
    case PhMatchWFirst: return "match_w1";
    case PhMatchWPlain: return "match_w";
    case PhPadDone: return "pad_done";
    case PhRegLead: return "lead";
    case PhRegBlk: return "blk";
    case PhRegBnd: return "bnd";
    default: return "state";
    }
}

const char* inv_sub_name(int sub) {
    switch (sub) {
    case SubExpect: return "e";
    case SubJustA: return "q";
    case SubBlankDone: return "k";
    case SubDigits: return "d";
    default: return "n";
    }
}

std::string inv_name(const InvState& s) {
    if (s.branch == BrSink) return "sink";
    std::string out = s.branch == BrB ? "b." : s.branch == BrC ? "c." : "reg.";
    out += inv_phase_name(s.phase);
    bool pushy = s.phase == PhPush || s.phase == PhSkim0 || s.phase == PhPushOdd ||
                 s.phase == PhRegBlk;
    if (pushy) {
        out += ".";
        out += inv_sub_name(s.sub);
        out += dec(s.sc);
        if (s.halt_cur) out += "H";
    }
    out += ".c" + dec(s.cap);
    if (s.last_halt) out += "L";
    if (s.branch == BrReg) out += ".y" + dec(s.parity);
    if (s.p != 0) out += std::string(".p") + s.p;
    if (s.r1 != 0) out += std::string(".1") + s.r1;
    if (s.r2 != 0) out += std::string(".2") + s.r2;
    if (s.r3 != 0) out += std::string(".3") + s.r3;
    if (s.r4 != 0) out += std::string(".4") + s.r4;
    if (s.cmp_halt) out += ".x";
    return out;
}

} // namespace

Pda invalc_pda(const TuringMachine& tm) {
    auto probs = tm_problems(tm);
    if (!probs.empty()) throw Error("malformed machine: " + probs.front());
    std::vector<char> enc = encoding_alphabet(tm);
    for (const auto& r : tm.delta) {
        if (r.write == tm.blank && r.move == 'L')
            throw EncodingOverflow("a rule writing the blank while moving left breaks the "
                                   "window tracking");
    }

    TmCtx ctx;
    ctx.start_c = tm.start[0];
    ctx.blank = tm.blank;
    ctx.accept_c = tm.accept[0];
    ctx.reject_c = tm.reject[0];
    ctx.tape.insert(tm.tape_alphabet.begin(), tm.tape_alphabet.end());
    ctx.input_chars.insert(tm.input_alphabet.begin(), tm.input_alphabet.end());
    for (const auto& q : tm.states) ctx.state_chars.insert(q[0]);
    for (const auto& r : tm.delta)
        ctx.rules[{r.state[0], r.read}] = {r.next[0], r.write, r.move};

    Pda p;
    p.input_alphabet = enc;
    p.initial_state = "init";
    p.initial_stack_symbol = "bot";
    p.stack_alphabet = {"bot"};
    std::vector<char> tops;
    tops.push_back(0); // bottom
    for (char c : enc) {
        if (c == '#') continue;
        p.stack_alphabet.push_back(std::string(1, c));
        tops.push_back(c);
    }

    std::map<InvState, std::string> names;
    std::deque<InvState> queue;
    p.states.push_back("init");
    auto intern = [&](const InvState& st) -> const std::string& {
        auto it = names.find(st);
        if (it != names.end()) return it->second;
        std::string nm = inv_name(st);
        it = names.emplace(st, nm).first;
        p.states.push_back(nm);
        queue.push_back(st);
        return it->second;
    };

    InvState lead_b = fresh(BrB, PhLead, 0, false);
    InvState lead_c = fresh(BrC, PhLead, 0, false);
    InvState lead_reg = fresh(BrReg, PhRegLead, 0, false);
    for (const auto& lead : {lead_b, lead_c, lead_reg}) {
        p.transitions.push_back({"init", std::nullopt, "bot", intern(lead), {"bot"}});
    }

    while (!queue.empty()) {
        InvState st = queue.front();
        queue.pop_front();
        if (st.branch == BrSink) continue; // handled below
        const std::string& from = names.at(st);
        for (char in : enc) {
            for (char top : tops) {
                InvMove mv = inv_step(ctx, st, in, top);
                const std::string& to = intern(mv.to);
                std::string pop = top == 0 ? "bot" : std::string(1, top);
                std::vector<std::string> push;
                if (mv.op == OpKeep) push = {pop};
                else if (mv.op == OpPush) push = {std::string(1, mv.push), pop};
                p.transitions.push_back({from, in, pop, to, std::move(push)});
            }
        }
    }

    if (names.count(InvState{.branch = BrSink})) {
        const std::string& sink = names.at(InvState{.branch = BrSink});
        for (const auto& x : p.stack_alphabet) {
            if (x == "bot") continue;
            p.transitions.push_back({sink, std::nullopt, x, sink, {}});
        }
        for (char c : enc) p.transitions.push_back({sink, c, "bot", sink, {"bot"}});
    }

    p.accepting.push_back("init");
    for (const auto& [st, nm] : names) {
        if (!inv_rejecting_end(st)) p.accepting.push_back(nm);
    }
    return p;
}

} // namespace explor
