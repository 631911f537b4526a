#include "explor/machine.hpp"

#include "explor/errors.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace explor {

Machine::Machine(Pda pda) : pda_(std::move(pda)) {
    auto rep = validate(pda_);
    if (!rep.ok()) throw Error("invalid pda: " + rep.violations.front());

    state_names_ = pda_.states;
    sym_names_ = pda_.stack_alphabet;
    for (std::size_t i = 0; i < state_names_.size(); ++i)
        state_ids_[state_names_[i]] = static_cast<StateId>(i);
    for (std::size_t i = 0; i < sym_names_.size(); ++i)
        sym_ids_[sym_names_[i]] = static_cast<SymId>(i);

    accepting_.assign(state_names_.size(), false);
    for (const auto& s : pda_.accepting) accepting_[state_ids_.at(s)] = true;

    const std::size_t slots = num_states() * num_syms();
    eps_at_.assign(slots, {});
    for (char a : pda_.input_alphabet) letter_at_[a].assign(slots, {});

    compiled_.reserve(pda_.transitions.size());
    for (std::size_t i = 0; i < pda_.transitions.size(); ++i) {
        const auto& t = pda_.transitions[i];
        CompiledTransition ct;
        ct.from = state_ids_.at(t.from);
        ct.input = t.input;
        ct.pop = sym_ids_.at(t.pop);
        ct.to = state_ids_.at(t.to);
        for (const auto& g : t.push) ct.push.push_back(sym_ids_.at(g));
        const std::size_t slot = static_cast<std::size_t>(ct.from) * num_syms() + ct.pop;
        if (t.input)
            letter_at_.at(*t.input)[slot].push_back(static_cast<int>(i));
        else
            eps_at_[slot].push_back(static_cast<int>(i));
        compiled_.push_back(std::move(ct));
    }
}

StateId Machine::state_id(const std::string& name) const {
    auto it = state_ids_.find(name);
    if (it == state_ids_.end()) throw Error("unknown state: " + name);
    return it->second;
}

SymId Machine::sym_id(const std::string& name) const {
    auto it = sym_ids_.find(name);
    if (it == sym_ids_.end()) throw Error("unknown stack symbol: " + name);
    return it->second;
}

Configuration Machine::initial() const {
    Configuration c;
    c.state = state_ids_.at(pda_.initial_state);
    c.stack = {sym_ids_.at(pda_.initial_stack_symbol)};
    return c;
}

const std::vector<int>& Machine::eps_moves_at(const Configuration& c) const {
    if (c.exhausted()) return empty_slot_;
    return eps_at_[static_cast<std::size_t>(c.state) * num_syms() + c.stack.front()];
}

const std::vector<int>& Machine::letter_moves_at(const Configuration& c, char a) const {
    if (c.exhausted()) return empty_slot_;
    auto it = letter_at_.find(a);
    if (it == letter_at_.end()) throw Error(std::string("letter not in input alphabet: ") + a);
    return it->second[static_cast<std::size_t>(c.state) * num_syms() + c.stack.front()];
}

Configuration Machine::apply(const Configuration& c, int id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= compiled_.size())
        throw IllegalMove("transition id out of range");
    const auto& t = compiled_[static_cast<std::size_t>(id)];
    if (c.exhausted()) throw IllegalMove("no move from an exhausted configuration");
    if (t.from != c.state || t.pop != c.stack.front())
        throw IllegalMove("transition not enabled at this configuration");
    Configuration out;
    out.state = t.to;
    out.stack.reserve(t.push.size() + c.stack.size() - 1);
    out.stack = t.push;
    out.stack.insert(out.stack.end(), c.stack.begin() + 1, c.stack.end());
    return out;
}

Run initial_run(const Machine& m) {
    Run r;
    r.configs.push_back(m.initial());
    return r;
}

bool valid_run(const Machine& m, const Run& r) {
    if (r.configs.size() != r.transitions.size() + 1) return false;
    std::string letters;
    for (std::size_t i = 0; i < r.transitions.size(); ++i) {
        const int id = r.transitions[i];
        if (id < 0 || static_cast<std::size_t>(id) >= m.num_transitions()) return false;
        try {
            if (m.apply(r.configs[i], id) != r.configs[i + 1]) return false;
        } catch (const IllegalMove&) {
            return false;
        }
        if (auto in = m.transition(id).input) letters.push_back(*in);
    }
    return letters == r.word;
}

namespace {

constexpr int kUnset = std::numeric_limits<int>::max();

struct EpsNode {
    Configuration cfg;
    bool passed = false;
    int depth = 0;
    std::vector<int> path;
};

} // namespace

LetterMoves letter_moves(const Machine& m, const Configuration& c, char a, int eps_budget) {
    LetterMoves out;

    // bfs over (config, accepting-seen) pairs, at most eps_budget eps moves.
    // an accepting-seen arrival dominates a plain one at the same or smaller
    // depth since every continuation keeps the flag.
    std::map<Configuration, std::pair<int, int>> depth; // {plain, passed}
    std::deque<EpsNode> queue;

    EpsNode start{c, m.accepting(c), 0, {}};
    queue.push_back(start);
    if (start.passed) {
        depth[c] = {kUnset, 0};
        out.eps_accept_reachable = true;
    } else {
        depth[c] = {0, kUnset};
    }

    struct Candidate {
        std::vector<int> path;
        bool passed = false;
    };
    std::map<Configuration, Candidate> best;

    auto better = [](const Candidate& x, const Candidate& y) {
        if (x.passed != y.passed) return x.passed;
        if (x.path.size() != y.path.size()) return x.path.size() < y.path.size();
        return x.path < y.path;
    };

    while (!queue.empty()) {
        EpsNode node = std::move(queue.front());
        queue.pop_front();

        for (int id : m.letter_moves_at(node.cfg, a)) {
            Candidate cand;
            cand.path = node.path;
            cand.path.push_back(id);
            cand.passed = node.passed;
            Configuration dest = m.apply(node.cfg, id);
            auto it = best.find(dest);
            if (it == best.end())
                best.emplace(std::move(dest), std::move(cand));
            else if (better(cand, it->second))
                it->second = std::move(cand);
        }

        for (int id : m.eps_moves_at(node.cfg)) {
            Configuration dest = m.apply(node.cfg, id);
            bool passed = node.passed || m.accepting(dest);
            auto& d = depth.try_emplace(dest, std::pair<int, int>{kUnset, kUnset}).first->second;
            int& mine = passed ? d.second : d.first;
            const int nd = node.depth + 1;
            bool dominated = passed ? (d.second <= nd) : (d.first <= nd || d.second <= nd);
            if (node.depth >= eps_budget) {
                if (!dominated) {
                    out.truncated = true;
                    if (!out.eps_accept_reachable) out.acc_truncated = true;
                }
                continue;
            }
            if (dominated) continue;
            mine = nd;
            EpsNode next;
            next.cfg = dest;
            next.passed = passed;
            next.depth = nd;
            next.path = node.path;
            next.path.push_back(id);
            if (passed && !out.eps_accept_reachable) {
                out.eps_accept_reachable = true;
                out.eps_accept_path = next.path;
            }
            queue.push_back(std::move(next));
        }
    }

    for (auto& [dest, cand] : best) {
        MoveOption opt;
        opt.to = dest;
        opt.path = std::move(cand.path);
        opt.passed_accepting = cand.passed;
        out.moves.push_back(std::move(opt));
    }
    // map iteration already sorts by destination
    return out;
}

ReadLetter read_letter(const Machine& m, const Configuration& c, char a, int eps_budget) {
    LetterMoves lm = letter_moves(m, c, a, eps_budget);
    ReadLetter out;
    out.budget_exceeded = lm.truncated;
    for (auto& opt : lm.moves) out.successors.emplace_back(std::move(opt.to), std::move(opt.path));
    return out;
}

namespace {

void enumerate_rec(const Machine& m, std::string_view word, std::size_t pos, int eps_depth,
                   int eps_budget, Run& cur, RunSet& out) {
    const Configuration cfg = cur.configs.back(); // copy: push_back below reallocates

    if (pos == word.size()) out.runs.push_back(cur);

    if (pos < word.size()) {
        for (int id : m.letter_moves_at(cfg, word[pos])) {
            cur.configs.push_back(m.apply(cfg, id));
            cur.transitions.push_back(id);
            cur.word.push_back(word[pos]);
            enumerate_rec(m, word, pos + 1, 0, eps_budget, cur, out);
            cur.word.pop_back();
            cur.transitions.pop_back();
            cur.configs.pop_back();
        }
    }

    const auto& eps = m.eps_moves_at(cfg);
    if (eps_depth >= eps_budget) {
        if (!eps.empty()) out.truncated = true;
        return;
    }
    for (int id : eps) {
        cur.configs.push_back(m.apply(cfg, id));
        cur.transitions.push_back(id);
        enumerate_rec(m, word, pos, eps_depth + 1, eps_budget, cur, out);
        cur.transitions.pop_back();
        cur.configs.pop_back();
    }
}

} // namespace

RunSet enumerate_runs(const Machine& m, std::string_view word, int eps_budget) {
    RunSet out;
    Run cur = initial_run(m);
    enumerate_rec(m, word, 0, 0, eps_budget, cur, out);
    return out;
}

MembershipVerdict bounded_accepts(const Machine& m, std::string_view word, int eps_budget) {
    struct Key {
        Configuration cfg;
        std::size_t pos;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, int> seen; // minimal eps depth in the current segment
    struct Node {
        Configuration cfg;
        std::size_t pos;
        int depth;
    };
    std::deque<Node> queue;
    bool truncated = false;

    Node start{m.initial(), 0, 0};
    seen[{start.cfg, 0}] = 0;
    queue.push_back(start);

    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();

        if (node.pos == word.size() && m.accepting(node.cfg)) return MembershipVerdict::Accept;

        if (node.pos < word.size()) {
            for (int id : m.letter_moves_at(node.cfg, word[node.pos])) {
                Node next{m.apply(node.cfg, id), node.pos + 1, 0};
                auto it = seen.find({next.cfg, next.pos});
                if (it != seen.end() && it->second <= 0) continue;
                seen[{next.cfg, next.pos}] = 0;
                queue.push_back(std::move(next));
            }
        }

        const auto& eps = m.eps_moves_at(node.cfg);
        if (node.depth >= eps_budget) {
            if (!eps.empty()) truncated = true;
            continue;
        }
        for (int id : eps) {
            Node next{m.apply(node.cfg, id), node.pos, node.depth + 1};
            auto it = seen.find({next.cfg, next.pos});
            if (it != seen.end() && it->second <= next.depth) continue;
            seen[{next.cfg, next.pos}] = next.depth;
            queue.push_back(std::move(next));
        }
    }

    return truncated ? MembershipVerdict::Unknown : MembershipVerdict::Reject;
}

std::vector<std::size_t> steps_of_run(const Run& r) {
    std::vector<std::size_t> heights;
    heights.reserve(r.configs.size());
    for (const auto& c : r.configs) heights.push_back(c.stack.size());

    std::vector<std::size_t> out;
    std::size_t suffix_min = std::numeric_limits<std::size_t>::max();
    std::vector<bool> is_step(heights.size(), false);
    for (std::size_t i = heights.size(); i-- > 0;) {
        suffix_min = std::min(suffix_min, heights[i]);
        is_step[i] = heights[i] == suffix_min;
    }
    for (std::size_t i = 0; i < heights.size(); ++i)
        if (is_step[i]) out.push_back(i);
    return out;
}

namespace {

bool is_step_of(const Run& r, std::size_t s) {
    if (s >= r.configs.size()) return false;
    const std::size_t h = r.configs[s].stack.size();
    for (std::size_t i = s; i < r.configs.size(); ++i)
        if (r.configs[i].stack.size() < h) return false;
    return true;
}

} // namespace

Run splice(const Machine& m, const Run& suffix_source, std::size_t s_suffix,
           const Run& prefix_source, std::size_t s_prefix) {
    if (!is_step_of(suffix_source, s_suffix))
        throw NotAStep("splice: position " + std::to_string(s_suffix) +
                       " is not a step of the suffix run");
    if (!is_step_of(prefix_source, s_prefix))
        throw NotAStep("splice: position " + std::to_string(s_prefix) +
                       " is not a step of the prefix run");

    const Configuration& a = suffix_source.configs[s_suffix];
    const Configuration& b = prefix_source.configs[s_prefix];
    if (a.exhausted() || b.exhausted())
        throw ModeMismatch("splice: exhausted configuration has no mode");
    if (a.state != b.state || a.stack.front() != b.stack.front())
        throw ModeMismatch("splice: configurations disagree on state or top of stack");

    Run out;
    out.configs.assign(prefix_source.configs.begin(),
                       prefix_source.configs.begin() + static_cast<std::ptrdiff_t>(s_prefix) + 1);
    out.transitions.assign(prefix_source.transitions.begin(),
                           prefix_source.transitions.begin() +
                               static_cast<std::ptrdiff_t>(s_prefix));
    for (int id : out.transitions)
        if (auto in = m.transition(id).input) out.word.push_back(*in);

    for (std::size_t i = s_suffix; i < suffix_source.transitions.size(); ++i) {
        const int id = suffix_source.transitions[i];
        out.configs.push_back(m.apply(out.configs.back(), id));
        out.transitions.push_back(id);
        if (auto in = m.transition(id).input) out.word.push_back(*in);
    }

    if (!valid_run(m, out)) throw Error("splice: produced an invalid run");
    return out;
}

ExtensionTable accepting_run_extensions(const Pda& pda, std::string_view base,
                                        std::string_view fill, int max_i, int max_j,
                                        int eps_budget) {
    if (fill.empty()) throw Error("extensions: fill word must be nonempty");
    Machine m(pda);

    ExtensionTable table;
    table.base = std::string(base);
    table.fill = std::string(fill);

    for (int j = 0; j <= max_j; ++j) {
        std::string word(base);
        for (int r = 0; r < j; ++r) word += fill;

        RunSet rs = enumerate_runs(m, word, eps_budget);
        table.truncated = table.truncated || rs.truncated;

        for (const Run& run : rs.runs) {
            std::set<std::size_t> accepted;
            std::size_t letters = 0;
            for (std::size_t cidx = 0; cidx < run.configs.size(); ++cidx) {
                if (cidx > 0 && m.transition(run.transitions[cidx - 1]).input) ++letters;
                if (m.accepting(run.configs[cidx])) accepted.insert(letters);
            }
            if (!accepted.count(word.size())) continue;
            for (int i = 0; i <= std::min(max_i, j - 1); ++i) {
                const std::size_t cut = base.size() + static_cast<std::size_t>(i) * fill.size();
                if (!accepted.count(cut)) continue;
                if (!table.pairs.count({i, j}))
                    table.pairs[{i, j}] = ExtensionWitness{run, cut};
            }
        }
    }
    return table;
}

int max_nondet_branching(const Pda& pda) {
    std::map<std::tuple<std::string, std::optional<char>, std::string>, int> counts;
    int best = 1;
    for (const auto& t : pda.transitions)
        best = std::max(best, ++counts[{t.from, t.input, t.pop}]);
    return best;
}

} // namespace explor
