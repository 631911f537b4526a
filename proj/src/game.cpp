#include "explor/game.hpp"

#include "explor/errors.hpp"
#include "explor/membership.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <set>

namespace explor {

namespace {

struct Ctx {
    const Machine& m;
    std::vector<char> alphabet; // sorted
    int eps_budget;
    bool strict;
    std::map<std::pair<Configuration, char>, LetterMoves> lm_cache;
    bool truncation_seen = false;

    Ctx(const Machine& mach, const SolveOptions& opts)
        : m(mach), alphabet(mach.pda().input_alphabet), eps_budget(opts.eps_budget),
          strict(opts.strict_checkpoint) {
        std::sort(alphabet.begin(), alphabet.end());
        if (alphabet.empty()) throw ConfigError("the machine reads no letters");
    }

    const LetterMoves& lm(const Configuration& c, char a) {
        auto key = std::make_pair(c, a);
        auto it = lm_cache.find(key);
        if (it == lm_cache.end()) {
            LetterMoves v = letter_moves(m, c, a, eps_budget);
            std::sort(v.moves.begin(), v.moves.end(),
                      [](const MoveOption& x, const MoveOption& y) { return x.to < y.to; });
            if (v.truncated || v.acc_truncated) truncation_seen = true;
            it = lm_cache.emplace(std::move(key), std::move(v)).first;
        }
        return it->second;
    }

    // accepting configuration reachable by eps moves alone (or already there)
    bool eps_acc(const Configuration& c, bool& taint) {
        const LetterMoves& v = lm(c, alphabet.front());
        taint = taint || v.acc_truncated;
        return v.eps_accept_reachable;
    }

    bool member(const std::vector<Configuration>& frontier, bool& taint) {
        for (const auto& cfg : frontier) {
            if (eps_acc(cfg, taint)) return true;
        }
        return false;
    }
};

struct NodeVal {
    bool dw = false;
    bool taint = false;
    std::string wit; // SpoilerWins: letters from this node onward
    int lose = 0;    // SpoilerWins: letters from this node to the violated prefix
};

struct Solver {
    explicit Solver(Ctx& c) : ctx(c) {}

    Ctx& ctx;
    const std::string* forced = nullptr; // when set, Spoiler is pinned to this word
    long long node_cap = 0;
    long long nodes = 0;
    long long hits = 0;
    bool cap_hit = false;
    std::map<NodeKey, NodeVal> memo;
    SolvedStrategy* strat = nullptr;
    int root_steps = 0;

    NodeVal eval(const NodeKey& node);
};

std::vector<Configuration> advance_frontier(Ctx& ctx, const std::vector<Configuration>& frontier,
                                            char a) {
    std::vector<Configuration> out;
    for (const auto& cfg : frontier) {
        for (const auto& opt : ctx.lm(cfg, a).moves) out.push_back(opt.to);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

NodeVal Solver::eval(const NodeKey& node) {
    if (auto it = memo.find(node); it != memo.end()) {
        ++hits;
        return it->second;
    }
    ++nodes;
    if (nodes > node_cap) {
        cap_hit = true;
        return {true, true, "", 0};
    }

    bool taint = false;
    bool member = ctx.member(node.frontier, taint);
    bool tok_acc = false;
    for (const auto& t : node.tokens) tok_acc = tok_acc || ctx.m.accepting(t);
    bool pending = member && !tok_acc;

    if (pending && ctx.strict) {
        NodeVal v{false, taint, "", 0};
        memo.emplace(node, v);
        return v;
    }
    if (node.steps_left == 0) {
        NodeVal v{true, taint, "", 0};
        if (pending) {
            bool disch = false;
            for (const auto& t : node.tokens) disch = disch || ctx.eps_acc(t, taint);
            v = disch ? NodeVal{true, taint, "", 0} : NodeVal{false, taint, "", 0};
        }
        memo.emplace(node, v);
        return v;
    }

    std::string letters;
    if (forced) {
        letters.push_back((*forced)[static_cast<std::size_t>(root_steps - node.steps_left)]);
    } else {
        letters.assign(ctx.alphabet.begin(), ctx.alphabet.end());
    }

    NodeVal out_sw;
    for (char a : letters) {
        bool ltaint = false;
        std::vector<Configuration> nf = advance_frontier(ctx, node.frontier, a);

        // options per alive token (node.tokens is sorted)
        std::vector<const std::vector<MoveOption>*> opts(node.tokens.size(), nullptr);
        bool death_disch = false;
        bool any_pass = false;
        for (std::size_t i = 0; i < node.tokens.size(); ++i) {
            const LetterMoves& lmv = ctx.lm(node.tokens[i], a);
            ltaint = ltaint || lmv.truncated || lmv.acc_truncated;
            if (lmv.moves.empty()) {
                death_disch = death_disch || lmv.eps_accept_reachable;
            } else {
                opts[i] = &lmv.moves;
                for (const auto& o : lmv.moves) any_pass = any_pass || o.passed_accepting;
            }
        }

        if (pending && !death_disch && !any_pass) {
            // nothing can certify the current member prefix during this round
            NodeVal v{false, taint || ltaint, std::string(1, a), 0};
            memo.emplace(node, v);
            return v;
        }
        bool need_pass = pending && !death_disch;

        // enumerate Determiner responses, identical tokens grouped as a multiset
        struct Group {
            std::size_t first = 0;
            std::size_t count = 0;
            const std::vector<MoveOption>* options = nullptr;
        };
        std::vector<Group> groups;
        for (std::size_t i = 0; i < node.tokens.size();) {
            std::size_t j = i;
            while (j < node.tokens.size() && node.tokens[j] == node.tokens[i]) ++j;
            if (opts[i] != nullptr) groups.push_back({i, j - i, opts[i]});
            i = j;
        }

        bool letter_ok = false;
        bool combo_taint = false;
        NodeVal best_sw;
        bool have_sw = false;
        std::vector<int> pick; // option index per group slot, flattened
        for (const auto& g : groups) pick.insert(pick.end(), g.count, 0);

        std::vector<std::optional<MoveOption>> winning_combo;

        // recursive multiset enumeration: indices non-decreasing within a group
        auto enumerate = [&](auto&& self, std::size_t gi, std::size_t slot) -> void {
            if (letter_ok || cap_hit) return;
            if (gi == groups.size()) {
                bool passes = false;
                std::vector<Configuration> child_tokens;
                std::size_t s = 0;
                for (const auto& g : groups) {
                    for (std::size_t c = 0; c < g.count; ++c, ++s) {
                        const MoveOption& o = (*g.options)[static_cast<std::size_t>(pick[s])];
                        passes = passes || o.passed_accepting;
                        child_tokens.push_back(o.to);
                    }
                }
                if (need_pass && !passes) return;
                std::sort(child_tokens.begin(), child_tokens.end());
                ++nodes;
                if (nodes > node_cap) {
                    cap_hit = true;
                    return;
                }
                NodeVal cv = eval({std::move(child_tokens), nf, node.steps_left - 1});
                if (cv.dw) {
                    letter_ok = true;
                    combo_taint = cv.taint;
                    if (strat) {
                        winning_combo.assign(node.tokens.size(), std::nullopt);
                        std::size_t s2 = 0;
                        for (const auto& g : groups) {
                            for (std::size_t c = 0; c < g.count; ++c, ++s2) {
                                winning_combo[g.first + c] =
                                    (*g.options)[static_cast<std::size_t>(pick[s2])];
                            }
                        }
                    }
                    return;
                }
                if (!have_sw || cv.lose > best_sw.lose) {
                    best_sw = cv;
                    have_sw = true;
                } else {
                    best_sw.taint = best_sw.taint || cv.taint;
                }
                if (cv.taint) combo_taint = true;
                return;
            }
            const Group& g = groups[gi];
            std::size_t base = slot;
            auto walk = [&](auto&& inner, std::size_t c, int lo) -> void {
                if (letter_ok || cap_hit) return;
                if (c == g.count) {
                    self(self, gi + 1, base + g.count);
                    return;
                }
                for (int v = lo; v < static_cast<int>(g.options->size()); ++v) {
                    pick[base + c] = v;
                    inner(inner, c + 1, v);
                    if (letter_ok || cap_hit) return;
                }
            };
            walk(walk, 0, 0);
        };
        enumerate(enumerate, 0, 0);

        if (cap_hit) {
            return {true, true, "", 0};
        }
        if (!letter_ok) {
            // Spoiler plays a; every response loses
            NodeVal v;
            v.dw = false;
            v.taint = taint || ltaint || (have_sw && best_sw.taint);
            if (have_sw) {
                v.wit = std::string(1, a) + best_sw.wit;
                v.lose = 1 + best_sw.lose;
            } else {
                // every combo was filtered by the discharge requirement
                v.wit = std::string(1, a);
                v.lose = 0;
            }
            memo.emplace(node, v);
            return v;
        }
        taint = taint || ltaint || combo_taint;
        if (strat) strat->table[{node, a}] = std::move(winning_combo);
    }

    NodeVal v{true, taint, "", 0};
    memo.emplace(node, v);
    return v;
}

NodeKey root_key(const Machine& m, int k, int steps) {
    NodeKey root;
    root.tokens.assign(static_cast<std::size_t>(k), m.initial());
    root.frontier = {m.initial()};
    root.steps_left = steps;
    return root;
}

struct Certification {
    bool ok = false;
    int lose_len = 0;
};

Certification certify_word(Ctx& ctx, int k, const std::string& w, long long node_cap) {
    Solver s(ctx);
    s.forced = &w;
    s.node_cap = node_cap;
    s.root_steps = static_cast<int>(w.size());
    NodeVal v = s.eval(root_key(ctx.m, k, static_cast<int>(w.size())));
    if (s.cap_hit || v.taint || v.dw) return {false, 0};
    return {true, v.lose};
}

bool oracle_member(const Ctx& ctx, const Pda& pda, SolveOptions::Oracle oracle,
                   const std::string& prefix, int eps_budget) {
    if (oracle == SolveOptions::Oracle::Exact) return exact_accepts(pda, prefix);
    int budget = std::max(eps_budget, static_cast<int>(prefix.size()) + 8);
    return bounded_accepts(ctx.m, prefix, budget) == MembershipVerdict::Accept;
}

} // namespace

GameOutcome solve(const Pda& pda, int k, int horizon, const SolveOptions& opts) {
    if (k < 1) throw ConfigError("the game needs at least one token");
    if (horizon < 0) throw ConfigError("horizon must be nonnegative");
    if (k > 4096) throw ConfigError("token budget too large for the solver");
    Machine m(pda);
    Ctx ctx(m, opts);

    Solver s(ctx);
    s.node_cap = opts.node_cap;
    s.root_steps = horizon;
    auto table = std::make_shared<SolvedStrategy>();
    s.strat = table.get();
    NodeVal v = s.eval(root_key(m, k, horizon));

    GameOutcome out;
    out.horizon = horizon;
    out.diagnostics.nodes_expanded = s.nodes;
    out.diagnostics.table_hits = s.hits;
    out.diagnostics.truncation_seen = ctx.truncation_seen;
    out.diagnostics.node_cap_hit = s.cap_hit;
    if (s.cap_hit || v.taint) {
        out.verdict = Verdict::Unknown;
        out.witness_word = v.wit;
        return out;
    }
    if (v.dw) {
        out.verdict = Verdict::DeterminerWins;
        out.strategy = std::move(table);
        return out;
    }

    out.verdict = Verdict::SpoilerWins;
    out.witness_word = v.wit;
    out.losing_prefix_len = v.lose;

    Certification cert = certify_word(ctx, k, v.wit, opts.node_cap);
    if (cert.ok &&
        oracle_member(ctx, pda, opts.oracle, v.wit.substr(0, static_cast<std::size_t>(cert.lose_len)),
                      opts.eps_budget)) {
        out.losing_prefix_len = cert.lose_len;
        out.diagnostics.witness_certified = true;
        return out;
    }

    // the principal variation only beats adaptive play; look for a fixed word
    long long tried = 0;
    const long long word_cap = 200000;
    std::vector<std::string> level = {""};
    for (int len = 0; len <= horizon && tried < word_cap; ++len) {
        std::vector<std::string> next;
        for (const auto& w : level) {
            if (tried >= word_cap) break;
            ++tried;
            Certification c2 = certify_word(ctx, k, w, opts.node_cap);
            if (c2.ok &&
                oracle_member(ctx, pda, opts.oracle,
                              w.substr(0, static_cast<std::size_t>(c2.lose_len)), opts.eps_budget)) {
                out.witness_word = w;
                out.losing_prefix_len = c2.lose_len;
                out.diagnostics.witness_certified = true;
                out.diagnostics.witness_exhaustive = true;
                return out;
            }
            if (len < horizon) {
                for (char a : ctx.alphabet) next.push_back(w + a);
            }
        }
        level = std::move(next);
    }
    return out; // SpoilerWins stands, but only against adaptive play
}

GameOutcome solve_parameterized(const Pda& pda, const std::function<long long(int)>& token_fn,
                                int n, const SolveOptions& opts) {
    if (!token_fn) throw ConfigError("token function is empty");
    long long k = token_fn(n);
    if (k < 1) throw ConfigError("token function must give at least one token");
    if (k > 4096) throw ConfigError("token budget too large for the solver");
    GameOutcome out = solve(pda, static_cast<int>(k), n, opts);
    out.announced_n = n;
    return out;
}

std::function<long long(int)> exp_schedule(long long base) {
    return [base](int n) {
        long long tokens = 1;
        for (int i = 0; i < n; ++i) {
            tokens *= std::max<long long>(base, 1);
            if (tokens > 1'000'000) return tokens; // already past any token guard
        }
        return tokens;
    };
}

namespace {

struct Checker {
    Ctx& ctx;
    const DeterminerStrategy& strat;
    int horizon;
    StrategyCheck result;
    std::set<std::tuple<std::vector<std::optional<Configuration>>, std::vector<Configuration>, int>>
        ok_nodes;

    bool fail(const std::string& play, int prefix_len) {
        if (result.ok) return false;
        if (result.failing_prefix_len < 0) {
            result.failing_play = play;
            result.failing_prefix_len = prefix_len;
        }
        return false;
    }

    // true when the strategy survives every continuation
    bool walk(const std::vector<std::optional<Configuration>>& tokens,
              const std::vector<Configuration>& frontier, int depth, const std::string& play) {
        auto key = std::make_tuple(tokens, frontier, depth);
        if (ok_nodes.count(key)) return true;

        bool taint = false;
        bool member = ctx.member(frontier, taint);
        bool tok_acc = false;
        for (const auto& t : tokens) tok_acc = tok_acc || (t && ctx.m.accepting(*t));
        bool pending = member && !tok_acc;
        if (pending && ctx.strict) return fail(play, depth);
        if (depth == horizon) {
            if (pending) {
                bool disch = false;
                for (const auto& t : tokens)
                    if (t) disch = disch || ctx.eps_acc(*t, taint);
                if (!disch) return fail(play, depth);
            }
            ok_nodes.insert(key);
            return true;
        }

        for (char a : ctx.alphabet) {
            std::vector<Configuration> nf = advance_frontier(ctx, frontier, a);
            std::vector<std::optional<Configuration>> next(tokens.size());
            bool death_disch = false;
            bool passed = false;

            // solved tables index tokens in canonical sorted order
            std::vector<std::size_t> alive;
            for (std::size_t i = 0; i < tokens.size(); ++i)
                if (tokens[i]) alive.push_back(i);

            if (strat.solved) {
                NodeKey nk;
                for (std::size_t i : alive) nk.tokens.push_back(*tokens[i]);
                std::sort(nk.tokens.begin(), nk.tokens.end());
                nk.frontier = frontier;
                nk.steps_left = horizon - depth;
                auto it = strat.solved->table.find({nk, a});
                if (it == strat.solved->table.end())
                    throw Error("strategy table has no entry for a reachable position");
                std::vector<std::size_t> order = alive;
                std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                    return *tokens[x] < *tokens[y];
                });
                const auto& combo = it->second;
                if (combo.size() != order.size())
                    throw Error("strategy table entry does not match the token count");
                for (std::size_t j = 0; j < order.size(); ++j) {
                    std::size_t ti = order[j];
                    const LetterMoves& lmv = ctx.lm(*tokens[ti], a);
                    if (!combo[j]) {
                        if (!lmv.moves.empty())
                            throw IllegalMove("strategy kills a token that still has moves");
                        death_disch = death_disch || lmv.eps_accept_reachable;
                        next[ti] = std::nullopt;
                        continue;
                    }
                    bool legal = false;
                    for (const auto& o : lmv.moves) {
                        if (o.to == combo[j]->to) {
                            legal = true;
                            passed = passed || o.passed_accepting;
                            next[ti] = o.to;
                            break;
                        }
                    }
                    if (!legal) throw IllegalMove("strategy move is not a legal letter move");
                }
            } else if (strat.scripted) {
                for (std::size_t i : alive) {
                    const LetterMoves& lmv = ctx.lm(*tokens[i], a);
                    if (lmv.moves.empty()) {
                        death_disch = death_disch || lmv.eps_accept_reachable;
                        next[i] = std::nullopt;
                        continue;
                    }
                    StrategyContext sc;
                    sc.machine = &ctx.m;
                    sc.round = depth + 1;
                    sc.letter = a;
                    sc.token_index = static_cast<int>(i);
                    sc.token = &*tokens[i];
                    sc.options = &lmv.moves;
                    int idx = strat.scripted(sc);
                    if (idx < 0 || idx >= static_cast<int>(lmv.moves.size()))
                        throw IllegalMove("scripted strategy chose an option that is not there");
                    passed = passed || lmv.moves[static_cast<std::size_t>(idx)].passed_accepting;
                    next[i] = lmv.moves[static_cast<std::size_t>(idx)].to;
                }
            } else {
                throw ConfigError("strategy has neither a table nor a script");
            }

            if (pending && !death_disch && !passed) return fail(play + a, depth);
            if (!walk(next, nf, depth + 1, play + a)) return false;
        }
        ok_nodes.insert(key);
        return true;
    }
};

} // namespace

StrategyCheck check_strategy(const Pda& pda, int k, const DeterminerStrategy& strategy,
                             int horizon, const SolveOptions& opts) {
    if (k < 1) throw ConfigError("the game needs at least one token");
    Machine m(pda);
    Ctx ctx(m, opts);
    Checker ch{ctx, strategy, horizon, {}, {}};
    std::vector<std::optional<Configuration>> tokens(static_cast<std::size_t>(k), m.initial());
    ch.result.ok = ch.walk(tokens, {m.initial()}, 0, "");
    return ch.result;
}

DeterminerStrategy scripted_round_robin(int n) {
    if (n < 1) throw ConfigError("round robin needs n >= 1");
    DeterminerStrategy st;
    st.scripted = [n](const StrategyContext& c) -> int {
        const auto& opts = *c.options;
        if (opts.size() == 1) return 0;
        const Machine& m = *c.machine;
        bool suffix_flavor = false;
        bool mod_flavor = false;
        for (const auto& q : m.pda().states) {
            if (q == "wait") suffix_flavor = true;
            if (q == "clear") mod_flavor = true;
        }
        auto dest = [&](std::size_t i) -> const std::string& {
            return m.state_name(opts[i].to.state);
        };
        if (suffix_flavor) {
            bool arm = ((c.round - 1) % n) == (c.token_index % n);
            for (std::size_t i = 0; i < opts.size(); ++i) {
                bool leaves = dest(i) != "wait";
                if (arm == leaves) return static_cast<int>(i);
            }
            return 0;
        }
        if (mod_flavor) {
            // token i commits to a prefix of length i: it counts prefix
            // letters until round i+1 and then enters the block gadget
            bool jump = c.round == c.token_index + 1;
            if (jump) {
                for (std::size_t i = 0; i < opts.size(); ++i)
                    if (dest(i).rfind("b_", 0) == 0) return static_cast<int>(i);
                return 0;
            }
            for (std::size_t i = 0; i < opts.size(); ++i)
                if (dest(i).rfind("a_", 0) == 0) return static_cast<int>(i);
            for (std::size_t i = 0; i < opts.size(); ++i)
                if (dest(i) == "blk") return static_cast<int>(i);
            return 0;
        }
        throw IllegalMove("round robin needs the counting gadget states");
    };
    return st;
}

namespace {

std::string config_str(const Machine& m, const Configuration& c) {
    std::string out = m.state_name(c.state) + " [";
    for (std::size_t i = 0; i < c.stack.size(); ++i) {
        if (i) out += " ";
        out += m.sym_name(c.stack[i]);
    }
    out += "]";
    return out;
}

} // namespace

Transcript play_interactive(const Pda& pda, int k, HumanRole human, std::istream& in,
                            std::ostream& out, const SolveOptions& opts) {
    if (k < 1) throw ConfigError("the game needs at least one token");
    Machine m(pda);
    Ctx ctx(m, opts);
    Transcript tr;
    tr.k = k;
    std::vector<std::optional<Configuration>> tokens(static_cast<std::size_t>(k), m.initial());
    std::vector<Configuration> frontier = {m.initial()};

    out << "letters:";
    for (char a : ctx.alphabet) out << " " << a;
    out << "\ntokens: " << k << "\n";

    auto show = [&]() {
        out << "prefix: \"" << tr.word << "\"\n";
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            out << "  token " << i << ": ";
            if (tokens[i]) out << config_str(m, *tokens[i]);
            else out << "dead";
            out << (tokens[i] && m.accepting(*tokens[i]) ? " (accepting)" : "") << "\n";
        }
    };

    auto finish_pending = [&](bool pending) {
        // session over; the trailing eps segment may still discharge
        if (!pending) return;
        bool taint = false;
        bool disch = false;
        for (const auto& t : tokens)
            if (t) disch = disch || ctx.eps_acc(*t, taint);
        if (!disch) {
            tr.determiner_lost = true;
            tr.loss_prefix_len = static_cast<int>(tr.word.size());
            out << "no token accepts the member prefix \"" << tr.word << "\"\n";
        }
    };

    bool taint = false;
    bool pending = ctx.member(frontier, taint);
    for (const auto& t : tokens) pending = pending && !(t && m.accepting(*t));

    while (true) {
        show();
        if (pending && ctx.strict) {
            tr.determiner_lost = true;
            tr.loss_prefix_len = static_cast<int>(tr.word.size());
            out << "no token accepts the member prefix \"" << tr.word << "\"\n";
            break;
        }

        char letter = 0;
        if (human == HumanRole::Spoiler) {
            std::string line;
            while (true) {
                out << "letter> " << std::flush;
                if (!std::getline(in, line)) {
                    tr.quit = true;
                    break;
                }
                if (line == "quit") {
                    tr.quit = true;
                    break;
                }
                if (line.size() == 1 &&
                    std::find(ctx.alphabet.begin(), ctx.alphabet.end(), line[0]) !=
                        ctx.alphabet.end()) {
                    letter = line[0];
                    break;
                }
                out << "not a letter of this machine\n";
            }
            if (tr.quit) break;
        } else {
            letter = ctx.alphabet.front();
            out << "spoiler plays: " << letter << "\n";
        }

        // per-token options
        std::vector<const std::vector<MoveOption>*> opts_at(tokens.size(), nullptr);
        bool death_disch = false;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!tokens[i]) continue;
            const LetterMoves& lmv = ctx.lm(*tokens[i], letter);
            if (lmv.moves.empty()) death_disch = death_disch || lmv.eps_accept_reachable;
            else opts_at[i] = &lmv.moves;
        }

        TranscriptRound round;
        round.letter = letter;
        round.responses.assign(tokens.size(), std::nullopt);
        bool passed = false;
        bool quit_now = false;

        if (human == HumanRole::Determiner) {
            for (std::size_t i = 0; i < tokens.size() && !quit_now; ++i) {
                if (!tokens[i]) continue;
                if (!opts_at[i]) {
                    out << "token " << i << " has no move and dies\n";
                    continue;
                }
                const auto& ov = *opts_at[i];
                out << "token " << i << " options:\n";
                for (std::size_t j = 0; j < ov.size(); ++j) {
                    out << "  " << j << ": " << config_str(m, ov[j].to)
                        << (ov[j].passed_accepting ? " (passes accepting)" : "") << "\n";
                }
                std::string line;
                while (true) {
                    out << "token " << i << "> " << std::flush;
                    if (!std::getline(in, line) || line == "quit") {
                        quit_now = true;
                        break;
                    }
                    std::size_t idx = ov.size();
                    std::istringstream is(line);
                    long long v = -1;
                    if (is >> v && v >= 0 && v < static_cast<long long>(ov.size()))
                        idx = static_cast<std::size_t>(v);
                    if (idx < ov.size()) {
                        round.responses[i] = ov[idx];
                        passed = passed || ov[idx].passed_accepting;
                        break;
                    }
                    out << "not an option index\n";
                }
            }
            if (quit_now) {
                tr.quit = true;
                break;
            }
        } else {
            // greedy machine Determiner: smallest destination per token, except
            // that a pending prefix claims the first passing option available
            bool need_pass = pending && !death_disch;
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                if (!tokens[i] || !opts_at[i]) continue;
                const auto& ov = *opts_at[i];
                std::size_t choice = 0;
                if (need_pass) {
                    for (std::size_t j = 0; j < ov.size(); ++j) {
                        if (ov[j].passed_accepting) {
                            choice = j;
                            need_pass = false;
                            break;
                        }
                    }
                }
                round.responses[i] = ov[choice];
                passed = passed || ov[choice].passed_accepting;
                out << "token " << i << " -> " << config_str(m, ov[choice].to) << "\n";
            }
        }

        if (pending && !death_disch && !passed) {
            tr.determiner_lost = true;
            tr.loss_prefix_len = static_cast<int>(tr.word.size());
            out << "no token accepts the member prefix \"" << tr.word << "\"\n";
            tr.rounds.push_back(round);
            tr.word.push_back(letter);
            break;
        }

        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!tokens[i]) continue;
            if (round.responses[i]) tokens[i] = round.responses[i]->to;
            else tokens[i] = std::nullopt;
        }
        frontier = advance_frontier(ctx, frontier, letter);
        tr.word.push_back(letter);
        tr.rounds.push_back(round);

        taint = false;
        pending = ctx.member(frontier, taint);
        for (const auto& t : tokens) pending = pending && !(t && m.accepting(*t));
    }

    if (tr.quit && !tr.determiner_lost) finish_pending(pending);
    return tr;
}

bool replay_transcript(const Pda& pda, const Transcript& t, const SolveOptions& opts) {
    Machine m(pda);
    Ctx ctx(m, opts);
    std::vector<std::optional<Configuration>> tokens(static_cast<std::size_t>(t.k), m.initial());
    std::vector<Configuration> frontier = {m.initial()};
    if (t.word.size() != t.rounds.size()) return false;

    bool taint = false;
    bool pending = ctx.member(frontier, taint);
    for (const auto& tok : tokens) pending = pending && !(tok && m.accepting(*tok));

    for (std::size_t r = 0; r < t.rounds.size(); ++r) {
        const TranscriptRound& round = t.rounds[r];
        if (round.letter != t.word[r]) return false;
        if (round.responses.size() != tokens.size()) return false;
        bool passed = false;
        bool death_disch = false;
        std::vector<std::optional<Configuration>> next(tokens.size());
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (!tokens[i]) {
                if (round.responses[i]) return false; // dead tokens stay dead
                continue;
            }
            const LetterMoves& lmv = ctx.lm(*tokens[i], round.letter);
            if (!round.responses[i]) {
                if (!lmv.moves.empty()) return false; // may not refuse a legal move
                death_disch = death_disch || lmv.eps_accept_reachable;
                continue;
            }
            bool legal = false;
            for (const auto& o : lmv.moves) {
                if (o.to == round.responses[i]->to) {
                    legal = true;
                    passed = passed || o.passed_accepting;
                    next[i] = o.to;
                    break;
                }
            }
            if (!legal) return false;
        }
        bool lost_here = pending && !death_disch && !passed;
        bool last = r + 1 == t.rounds.size();
        if (lost_here) {
            // the recorded loss must sit exactly here
            return t.determiner_lost && last &&
                   t.loss_prefix_len == static_cast<int>(r);
        }
        tokens = std::move(next);
        frontier = advance_frontier(ctx, frontier, round.letter);
        taint = false;
        pending = ctx.member(frontier, taint);
        for (const auto& tok : tokens) pending = pending && !(tok && m.accepting(*tok));
        if (pending && ctx.strict) {
            return t.determiner_lost && last &&
                   t.loss_prefix_len == static_cast<int>(r + 1);
        }
    }
    // a trailing obligation decides the rest: the claimed result must match
    // whether the eps segment can still discharge it
    bool disch = false;
    if (pending && !ctx.strict)
        for (const auto& tok : tokens)
            if (tok) disch = disch || ctx.eps_acc(*tok, taint);
    bool lost = pending && !disch;
    if (t.determiner_lost != lost) return false;
    return !lost || t.loss_prefix_len == static_cast<int>(t.word.size());
}

} // namespace explor
