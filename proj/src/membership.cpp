#include "explor/membership.hpp"

#include "explor/errors.hpp"
#include "explor/machine.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <tuple>

namespace explor {

CfgSymbol term_sym(char c) {
    CfgSymbol s;
    s.is_terminal = true;
    s.terminal = c;
    return s;
}

CfgSymbol nt_sym(int id) {
    CfgSymbol s;
    s.nonterminal = id;
    return s;
}

namespace {

std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
    return base;
}

} // namespace

Pda to_empty_stack(const Pda& pda) {
    ValidationReport rep = validate(pda);
    if (!rep.ok()) throw Error("invalid machine: " + rep.violations.front());

    Pda out;
    std::string bottom = fresh_name("Z_", pda.stack_alphabet);
    std::string start = fresh_name("q_start", pda.states);
    std::string drain = fresh_name("q_drain", pda.states);

    out.states = pda.states;
    out.states.push_back(start);
    out.states.push_back(drain);
    out.input_alphabet = pda.input_alphabet;
    out.stack_alphabet = pda.stack_alphabet;
    out.stack_alphabet.push_back(bottom);
    out.initial_state = start;
    out.initial_stack_symbol = bottom;
    out.accepting = {}; // acceptance is by empty stack from here on

    out.transitions.push_back(
        {start, std::nullopt, bottom, pda.initial_state, {pda.initial_stack_symbol, bottom}});
    for (const auto& t : pda.transitions) out.transitions.push_back(t);
    for (const auto& f : pda.accepting) {
        for (const auto& x : out.stack_alphabet) {
            out.transitions.push_back({f, std::nullopt, x, drain, {}});
        }
    }
    for (const auto& x : out.stack_alphabet) {
        out.transitions.push_back({drain, std::nullopt, x, drain, {}});
    }
    return out;
}

namespace {

// body encoded for dedup: N<id>; or T<char>;
std::string body_key(const std::vector<CfgSymbol>& body) {
    std::string k;
    for (const auto& s : body) {
        if (s.is_terminal) {
            k += 'T';
            k += s.terminal;
        } else {
            k += 'N';
            k += std::to_string(s.nonterminal);
        }
        k += ';';
    }
    return k;
}

struct RawGrammar {
    std::vector<std::string> names; // index 0 is the seed start
    std::vector<CfgProduction> prods;
};

RawGrammar saturate(const Machine& m, const CfgLimits& limits) {
    RawGrammar g;
    g.names.push_back("S");
    std::map<std::tuple<int, int, int>, int> ids;
    std::vector<std::tuple<int, int, int>> todo;

    auto need = [&](int q, int x, int p) {
        auto it = ids.find({q, x, p});
        if (it != ids.end()) return it->second;
        if (g.names.size() >= limits.max_nonterminals)
            throw GrammarLimit("nonterminal cap " + std::to_string(limits.max_nonterminals) +
                               " exceeded during saturation");
        int id = static_cast<int>(g.names.size());
        ids.emplace(std::tuple{q, x, p}, id);
        g.names.push_back("<" + m.state_name(q) + "|" + m.sym_name(x) + "|" + m.state_name(p) +
                          ">");
        todo.emplace_back(q, x, p);
        return id;
    };
    auto add = [&](CfgProduction pr) {
        if (g.prods.size() >= limits.max_productions)
            throw GrammarLimit("production cap " + std::to_string(limits.max_productions) +
                               " exceeded during saturation");
        g.prods.push_back(std::move(pr));
    };

    Configuration init = m.initial();
    for (int p = 0; p < static_cast<int>(m.num_states()); ++p) {
        add({0, {nt_sym(need(init.state, init.stack[0], p))}});
    }

    const auto& sigma = m.pda().input_alphabet;
    while (!todo.empty()) {
        auto [q, x, p] = todo.back();
        todo.pop_back();
        int head = ids.at({q, x, p});

        Configuration probe;
        probe.state = q;
        probe.stack = {x};
        std::vector<int> tids = m.eps_moves_at(probe);
        for (char c : sigma) {
            const auto& lm = m.letter_moves_at(probe, c);
            tids.insert(tids.end(), lm.begin(), lm.end());
        }
        for (int tid : tids) {
            const CompiledTransition& t = m.transition(tid);
            std::vector<CfgSymbol> prefix;
            if (t.input) prefix.push_back(term_sym(*t.input));
            if (t.push.empty()) {
                if (t.to == p) add({head, prefix});
            } else if (t.push.size() == 1) {
                auto body = prefix;
                body.push_back(nt_sym(need(t.to, t.push[0], p)));
                add({head, std::move(body)});
            } else {
                for (int s = 0; s < static_cast<int>(m.num_states()); ++s) {
                    auto body = prefix;
                    body.push_back(nt_sym(need(t.to, t.push[0], s)));
                    body.push_back(nt_sym(need(s, t.push[1], p)));
                    add({head, std::move(body)});
                }
            }
        }
    }
    return g;
}

std::vector<bool> nullable_set(std::size_t n, const std::vector<CfgProduction>& prods) {
    std::vector<bool> nullable(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& pr : prods) {
            if (nullable[pr.head]) continue;
            bool all = true;
            for (const auto& s : pr.body) {
                if (s.is_terminal || !nullable[s.nonterminal]) {
                    all = false;
                    break;
                }
            }
            if (all) {
                nullable[pr.head] = true;
                changed = true;
            }
        }
    }
    return nullable;
}

void dedup_prods(std::vector<CfgProduction>& prods) {
    std::set<std::pair<int, std::string>> seen;
    std::vector<CfgProduction> out;
    for (auto& pr : prods) {
        if (seen.emplace(pr.head, body_key(pr.body)).second) out.push_back(std::move(pr));
    }
    prods = std::move(out);
}

void remove_epsilons(std::vector<CfgProduction>& prods, const std::vector<bool>& nullable,
                     const CfgLimits& limits) {
    std::vector<CfgProduction> out;
    for (const auto& pr : prods) {
        std::vector<std::size_t> drops;
        for (std::size_t i = 0; i < pr.body.size(); ++i) {
            if (!pr.body[i].is_terminal && nullable[pr.body[i].nonterminal]) drops.push_back(i);
        }
        // bodies have at most three symbols, so the subset walk stays tiny
        for (std::size_t mask = 0; mask < (std::size_t{1} << drops.size()); ++mask) {
            CfgProduction v;
            v.head = pr.head;
            for (std::size_t i = 0, d = 0; i < pr.body.size(); ++i) {
                if (d < drops.size() && drops[d] == i) {
                    bool dropped = (mask >> d) & 1;
                    ++d;
                    if (dropped) continue;
                }
                v.body.push_back(pr.body[i]);
            }
            if (v.body.empty()) continue;
            if (out.size() >= limits.max_productions)
                throw GrammarLimit("production cap exceeded during epsilon removal");
            out.push_back(std::move(v));
        }
    }
    dedup_prods(out);
    prods = std::move(out);
}

void remove_units(std::size_t n, std::vector<CfgProduction>& prods, const CfgLimits& limits) {
    std::vector<std::vector<int>> unit_edges(n);
    for (const auto& pr : prods) {
        if (pr.body.size() == 1 && !pr.body[0].is_terminal)
            unit_edges[pr.head].push_back(pr.body[0].nonterminal);
    }
    std::vector<std::vector<CfgProduction>> non_unit(n);
    for (const auto& pr : prods) {
        if (pr.body.size() != 1 || pr.body[0].is_terminal) non_unit[pr.head].push_back(pr);
    }
    std::vector<CfgProduction> out;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{static_cast<int>(a)};
        seen[a] = true;
        while (!stack.empty()) {
            int b = stack.back();
            stack.pop_back();
            for (const auto& pr : non_unit[b]) {
                if (out.size() >= limits.max_productions)
                    throw GrammarLimit("production cap exceeded during unit elimination");
                out.push_back({static_cast<int>(a), pr.body});
            }
            for (int c : unit_edges[b]) {
                if (!seen[c]) {
                    seen[c] = true;
                    stack.push_back(c);
                }
            }
        }
    }
    dedup_prods(out);
    prods = std::move(out);
}

// keeps generating symbols reachable from the start; renumbers in place
void remove_useless(std::vector<std::string>& names, std::vector<CfgProduction>& prods,
                    int start) {
    std::size_t n = names.size();
    std::vector<bool> generating(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& pr : prods) {
            if (generating[pr.head]) continue;
            bool all = true;
            for (const auto& s : pr.body) {
                if (!s.is_terminal && !generating[s.nonterminal]) {
                    all = false;
                    break;
                }
            }
            if (all) {
                generating[pr.head] = true;
                changed = true;
            }
        }
    }
    std::vector<bool> reachable(n, false);
    reachable[start] = true;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (const auto& pr : prods) {
            if (pr.head != a) continue;
            bool ok = true;
            for (const auto& s : pr.body) {
                if (!s.is_terminal && !generating[s.nonterminal]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            for (const auto& s : pr.body) {
                if (!s.is_terminal && !reachable[s.nonterminal]) {
                    reachable[s.nonterminal] = true;
                    stack.push_back(s.nonterminal);
                }
            }
        }
    }
    std::vector<int> remap(n, -1);
    std::vector<std::string> new_names;
    for (std::size_t a = 0; a < n; ++a) {
        if (a == static_cast<std::size_t>(start) || (reachable[a] && generating[a])) {
            remap[a] = static_cast<int>(new_names.size());
            new_names.push_back(names[a]);
        }
    }
    std::vector<CfgProduction> out;
    for (const auto& pr : prods) {
        if (remap[pr.head] < 0) continue;
        bool ok = true;
        CfgProduction v;
        v.head = remap[pr.head];
        for (const auto& s : pr.body) {
            if (s.is_terminal) {
                v.body.push_back(s);
            } else if (remap[s.nonterminal] >= 0 && generating[s.nonterminal] &&
                       reachable[s.nonterminal]) {
                v.body.push_back(nt_sym(remap[s.nonterminal]));
            } else {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(v));
    }
    names = std::move(new_names);
    prods = std::move(out);
}

void binarize(std::vector<std::string>& names, std::vector<CfgProduction>& prods,
              const CfgLimits& limits) {
    std::map<char, int> term_nts;
    auto term_nt = [&](char c) {
        auto it = term_nts.find(c);
        if (it != term_nts.end()) return it->second;
        int id = static_cast<int>(names.size());
        names.push_back(std::string("T(") + c + ")");
        term_nts.emplace(c, id);
        return id;
    };
    std::vector<CfgProduction> out;
    int chain = 0;
    for (const auto& pr : prods) {
        if (pr.body.size() == 1) {
            out.push_back(pr); // A -> a (units are gone already)
            continue;
        }
        std::vector<CfgSymbol> body;
        for (const auto& s : pr.body) {
            body.push_back(s.is_terminal ? nt_sym(term_nt(s.terminal)) : s);
        }
        int head = pr.head;
        while (body.size() > 2) {
            if (names.size() >= limits.max_nonterminals)
                throw GrammarLimit("nonterminal cap exceeded during binarization");
            int mid = static_cast<int>(names.size());
            names.push_back("B" + std::to_string(chain++));
            out.push_back({head, {body[0], nt_sym(mid)}});
            body.erase(body.begin());
            head = mid;
        }
        out.push_back({head, body});
    }
    for (const auto& [c, id] : term_nts) out.push_back({id, {term_sym(c)}});
    dedup_prods(out);
    prods = std::move(out);
}

} // namespace

Cfg to_cfg(const Pda& pda, const CfgLimits& limits) {
    Pda es = to_empty_stack(pda);
    Machine m(es);
    RawGrammar raw = saturate(m, limits);

    std::vector<bool> nullable = nullable_set(raw.names.size(), raw.prods);
    bool eps_in_language = nullable[0];
    remove_epsilons(raw.prods, nullable, limits);
    remove_units(raw.names.size(), raw.prods, limits);
    remove_useless(raw.names, raw.prods, 0);
    binarize(raw.names, raw.prods, limits);

    // the old start may appear on right-hand sides, so give the grammar a
    // fresh entry point carrying its productions plus the epsilon flag
    int s0 = static_cast<int>(raw.names.size());
    raw.names.push_back("S0");
    std::vector<CfgProduction> extra;
    for (const auto& pr : raw.prods) {
        if (pr.head == 0) extra.push_back({s0, pr.body});
    }
    if (eps_in_language) extra.push_back({s0, {}});
    raw.prods.insert(raw.prods.end(), extra.begin(), extra.end());
    dedup_prods(raw.prods);

    Cfg g;
    g.nonterminal_names = std::move(raw.names);
    g.terminals = pda.input_alphabet;
    g.productions = std::move(raw.prods);
    g.start = s0;
    return g;
}

std::string dump(const Cfg& g) {
    std::vector<std::string> lines;
    for (const auto& pr : g.productions) {
        std::string line = g.nonterminal_names[pr.head] + " ->";
        if (pr.body.empty()) {
            line += " .";
        } else {
            for (const auto& s : pr.body) {
                line += ' ';
                if (s.is_terminal) {
                    line += s.terminal;
                } else {
                    line += g.nonterminal_names[s.nonterminal];
                }
            }
        }
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

namespace {

struct CompiledGrammar {
    int num_nts = 0;
    int start = 0;
    bool has_eps = false;
    std::map<char, std::vector<int>> term_heads;
    std::vector<std::vector<std::pair<int, int>>> by_first; // B -> list of (C, A)
};

CompiledGrammar compile(const Cfg& g) {
    CompiledGrammar cg;
    cg.num_nts = static_cast<int>(g.nonterminal_names.size());
    cg.start = g.start;
    cg.by_first.resize(cg.num_nts);
    for (const auto& pr : g.productions) {
        if (pr.body.empty()) {
            if (pr.head == g.start) cg.has_eps = true;
            continue;
        }
        if (pr.body.size() == 1 && pr.body[0].is_terminal) {
            cg.term_heads[pr.body[0].terminal].push_back(pr.head);
            continue;
        }
        if (pr.body.size() == 2 && !pr.body[0].is_terminal && !pr.body[1].is_terminal) {
            cg.by_first[pr.body[0].nonterminal].emplace_back(pr.body[1].nonterminal, pr.head);
            continue;
        }
        throw Error("grammar is not in binarized form");
    }
    return cg;
}

bool cyk(const CompiledGrammar& g, std::string_view w) {
    if (w.empty()) return g.has_eps;
    std::size_t n = w.size();
    // cell(i, l): sorted nonterminal lists for w[i, i+l)
    std::vector<std::vector<int>> cells(n * n);
    auto cell = [&](std::size_t i, std::size_t l) -> std::vector<int>& {
        return cells[i * n + (l - 1)];
    };
    std::vector<uint8_t> mark(g.num_nts, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto it = g.term_heads.find(w[i]);
        if (it != g.term_heads.end()) {
            auto nts = it->second;
            std::sort(nts.begin(), nts.end());
            nts.erase(std::unique(nts.begin(), nts.end()), nts.end());
            cell(i, 1) = std::move(nts);
        }
    }
    for (std::size_t l = 2; l <= n; ++l) {
        for (std::size_t i = 0; i + l <= n; ++i) {
            auto& target = cell(i, l);
            for (std::size_t s = 1; s < l; ++s) {
                const auto& left = cell(i, s);
                const auto& right = cell(i + s, l - s);
                if (left.empty() || right.empty()) continue;
                for (int b : left) {
                    for (const auto& [c, a] : g.by_first[b]) {
                        if (!mark[a] &&
                            std::binary_search(right.begin(), right.end(), c)) {
                            mark[a] = 1;
                            target.push_back(a);
                        }
                    }
                }
            }
            std::sort(target.begin(), target.end());
            for (int a : target) mark[a] = 0;
        }
    }
    const auto& full = cell(0, n);
    return std::binary_search(full.begin(), full.end(), g.start);
}

std::string pda_key(const Pda& pda) {
    std::string k;
    auto put = [&](std::string_view s) {
        k += std::to_string(s.size());
        k += ':';
        k += s;
    };
    for (const auto& s : pda.states) put(s);
    k += '|';
    put(std::string(pda.input_alphabet.begin(), pda.input_alphabet.end()));
    for (const auto& s : pda.stack_alphabet) put(s);
    k += '|';
    put(pda.initial_state);
    put(pda.initial_stack_symbol);
    for (const auto& s : pda.accepting) put(s);
    k += '|';
    for (const auto& t : pda.transitions) {
        put(t.from);
        put(t.input ? std::string(1, *t.input) : std::string());
        k += t.input ? 'c' : 'e';
        put(t.pop);
        put(t.to);
        for (const auto& s : t.push) put(s);
        k += ';';
    }
    return k;
}

struct OracleEntry {
    CompiledGrammar grammar;
    std::map<std::string, bool, std::less<>> memo;
};

std::mutex g_oracle_mutex;
std::map<std::string, OracleEntry>& oracle_cache() {
    static std::map<std::string, OracleEntry> cache;
    return cache;
}

} // namespace

bool exact_accepts(const Pda& pda, std::string_view w) {
    for (char c : w) {
        if (std::find(pda.input_alphabet.begin(), pda.input_alphabet.end(), c) ==
            pda.input_alphabet.end())
            throw AlphabetMismatch(std::string("character ") + c + " outside the input alphabet");
    }
    std::lock_guard<std::mutex> lock(g_oracle_mutex);
    auto& cache = oracle_cache();
    std::string key = pda_key(pda);
    auto it = cache.find(key);
    if (it == cache.end()) {
        OracleEntry e;
        e.grammar = compile(to_cfg(pda));
        it = cache.emplace(std::move(key), std::move(e)).first;
    }
    auto& memo = it->second.memo;
    auto hit = memo.find(w);
    if (hit != memo.end()) return hit->second;
    bool v = cyk(it->second.grammar, w);
    memo.emplace(std::string(w), v);
    return v;
}

} // namespace explor
