#include "explor/turing.hpp"

#include "explor/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace explor {

namespace {

bool contains_char(const std::vector<char>& v, char c) {
    return std::find(v.begin(), v.end(), c) != v.end();
}

char tape_at(const TuringMachine& tm, const TmConfiguration& c, std::size_t pos) {
    return pos < c.tape.size() ? c.tape[pos] : tm.blank;
}

const TmRule* find_rule(const TuringMachine& tm, const std::string& state, char read) {
    for (const auto& r : tm.delta) {
        if (r.state == state && r.read == read) return &r;
    }
    return nullptr;
}

} // namespace

std::vector<std::string> tm_problems(const TuringMachine& tm) {
    std::vector<std::string> out;
    std::set<std::string> st(tm.states.begin(), tm.states.end());
    if (st.size() != tm.states.size()) out.push_back("duplicate state name");
    std::set<char> tape(tm.tape_alphabet.begin(), tm.tape_alphabet.end());
    if (tape.size() != tm.tape_alphabet.size()) out.push_back("duplicate tape symbol");
    std::set<char> in(tm.input_alphabet.begin(), tm.input_alphabet.end());
    if (in.size() != tm.input_alphabet.size()) out.push_back("duplicate input symbol");
    for (char c : tm.input_alphabet) {
        if (!tape.count(c)) out.push_back(std::string("input symbol ") + c + " not on tape");
    }
    if (!tape.count(tm.blank)) out.push_back("blank not in tape alphabet");
    if (in.count(tm.blank)) out.push_back("blank must not be an input symbol");
    for (const auto& s : {tm.start, tm.accept, tm.reject}) {
        if (!st.count(s)) out.push_back("undeclared state " + s);
    }
    if (tm.accept == tm.reject) out.push_back("accept and reject must differ");

    std::set<std::pair<std::string, char>> seen;
    for (const auto& r : tm.delta) {
        if (!st.count(r.state)) out.push_back("rule from undeclared state " + r.state);
        if (!st.count(r.next)) out.push_back("rule to undeclared state " + r.next);
        if (r.state == tm.accept || r.state == tm.reject)
            out.push_back("rule from halting state " + r.state);
        if (!tape.count(r.read)) out.push_back(std::string("rule reads unknown symbol ") + r.read);
        if (!tape.count(r.write)) out.push_back(std::string("rule writes unknown symbol ") + r.write);
        if (r.move != 'L' && r.move != 'R') out.push_back("rule move must be L or R");
        if (!seen.insert({r.state, r.read}).second)
            out.push_back("duplicate rule for (" + r.state + ", " + std::string(1, r.read) + ")");
    }
    for (const auto& q : tm.states) {
        if (q == tm.accept || q == tm.reject) continue;
        for (char c : tm.tape_alphabet) {
            if (!seen.count({q, c}))
                out.push_back("missing rule for (" + q + ", " + std::string(1, c) + ")");
        }
    }
    return out;
}

TmConfiguration tm_start(const TuringMachine& tm, std::string_view input) {
    for (char c : input) {
        if (!contains_char(tm.input_alphabet, c))
            throw AlphabetMismatch(std::string("input symbol ") + c + " not in the input alphabet");
    }
    TmConfiguration c;
    c.state = tm.start;
    c.tape.assign(input.begin(), input.end());
    c.head = 0;
    return c;
}

bool tm_halted(const TuringMachine& tm, const TmConfiguration& c) {
    return c.state == tm.accept || c.state == tm.reject;
}

std::optional<TmConfiguration> tm_step(const TuringMachine& tm, const TmConfiguration& c) {
    if (tm_halted(tm, c)) return std::nullopt;
    char read = tape_at(tm, c, c.head);
    const TmRule* r = find_rule(tm, c.state, read);
    if (r == nullptr)
        throw Error("no rule for (" + c.state + ", " + std::string(1, read) + ")");
    TmConfiguration next = c;
    if (next.head >= next.tape.size()) next.tape.resize(next.head + 1, tm.blank);
    next.tape[next.head] = r->write;
    next.state = r->next;
    if (r->move == 'R') {
        next.head += 1;
    } else if (next.head > 0) {
        next.head -= 1;
    }
    return next;
}

TmRun run_tm(const TuringMachine& tm, std::string_view input, int max_steps) {
    TmRun run;
    run.trace.push_back(tm_start(tm, input));
    for (int i = 0; i < max_steps; ++i) {
        auto next = tm_step(tm, run.trace.back());
        if (!next) break;
        run.trace.push_back(std::move(*next));
    }
    run.halted = tm_halted(tm, run.trace.back());
    run.accepted = run.halted && run.trace.back().state == tm.accept;
    return run;
}

std::string id_string(const TuringMachine& tm, const TmConfiguration& c) {
    std::size_t rightmost = 0;
    bool any = false;
    for (std::size_t i = 0; i < c.tape.size(); ++i) {
        if (c.tape[i] != tm.blank) {
            rightmost = i;
            any = true;
        }
    }
    std::size_t w = std::max(c.head, any ? rightmost : 0) + 1;
    std::string out;
    for (std::size_t i = 0; i < c.head; ++i) out += tape_at(tm, c, i);
    out += c.state;
    for (std::size_t i = c.head; i < w; ++i) out += tape_at(tm, c, i);
    return out;
}

std::optional<std::string> valc_string(const TuringMachine& tm, std::string_view input,
                                       int max_steps) {
    TmRun run = run_tm(tm, input, max_steps);
    std::size_t n = run.trace.size() - 1;
    if (!run.halted || n < 4 || n % 2 != 0) return std::nullopt;
    std::string out = "#";
    for (std::size_t t = 0; t < run.trace.size(); ++t) {
        std::string id = id_string(tm, run.trace[t]);
        if (t % 2 == 1) std::reverse(id.begin(), id.end());
        out += id;
        out += '#';
    }
    return out;
}

namespace {

bool is_valc(const TuringMachine& tm, std::string_view s) {
    if (s.size() < 2 || s.front() != '#' || s.back() != '#') return false;
    std::vector<std::string> ids;
    std::string cur;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] == '#') {
            ids.push_back(cur);
            cur.clear();
        } else {
            cur += s[i];
        }
    }
    if (ids.size() < 5 || ids.size() % 2 == 0) return false; // N = ids.size()-1 even, >= 4
    for (std::size_t t = 1; t < ids.size(); t += 2) std::reverse(ids[t].begin(), ids[t].end());

    // initial snapshot: start state character, then the input or one blank
    const std::string& c0 = ids[0];
    if (tm.start.size() != 1 || c0.size() < 2 || c0[0] != tm.start[0]) return false;
    std::string input = c0.substr(1);
    if (input == std::string(1, tm.blank)) {
        input.clear();
    } else {
        for (char c : input) {
            if (!contains_char(tm.input_alphabet, c)) return false;
        }
    }

    TmConfiguration conf = tm_start(tm, input);
    if (id_string(tm, conf) != ids[0]) return false;
    for (std::size_t t = 1; t < ids.size(); ++t) {
        auto next = tm_step(tm, conf);
        if (!next) return false; // halted before the last snapshot
        conf = std::move(*next);
        if (id_string(tm, conf) != ids[t]) return false;
    }
    return tm_halted(tm, conf);
}

} // namespace

bool invalc_oracle(const TuringMachine& tm, std::string_view s) {
    return !is_valc(tm, s);
}

std::vector<char> encoding_alphabet(const TuringMachine& tm) {
    std::set<char> used(tm.tape_alphabet.begin(), tm.tape_alphabet.end());
    if (used.count('#'))
        throw EncodingOverflow("tape alphabet uses the separator #");
    std::vector<char> out = tm.tape_alphabet;
    for (const auto& q : tm.states) {
        if (q.size() != 1)
            throw EncodingOverflow("state name " + q + " is not a single character");
        if (q[0] == '#')
            throw EncodingOverflow("state name collides with the separator #");
        if (!used.insert(q[0]).second)
            throw EncodingOverflow("state character " + q + " collides with a tape symbol");
        out.push_back(q[0]);
    }
    out.push_back('#');
    return out;
}

TuringMachine demo_tm() {
    TuringMachine tm;
    tm.states = {"A", "B", "Y", "N"};
    tm.input_alphabet = {'0'};
    tm.tape_alphabet = {'0', '_'};
    tm.blank = '_';
    tm.start = "A";
    tm.accept = "Y";
    tm.reject = "N";
    tm.delta = {
        {"A", '0', "B", '0', 'R'},
        {"A", '_', "B", '0', 'R'},
        {"B", '0', "Y", '0', 'R'},
        {"B", '_', "A", '0', 'L'},
    };
    return tm;
}

} // namespace explor
