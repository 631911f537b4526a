#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "explor/errors.hpp"
#include "explor/families.hpp"
#include "explor/game.hpp"
#include "explor/membership.hpp"
#include "helpers.hpp"

#include <sstream>
#include <string>

using namespace explor;
using explor::testing::binary_branch_pda;
using explor::testing::eps_pump_pda;

TEST_CASE("token count separates the union family") {
    GameOutcome lost = solve(union_pda(1), 1, 3);
    CHECK(lost.verdict == Verdict::SpoilerWins);
    CHECK(lost.witness_word == "abb");
    CHECK(lost.losing_prefix_len == 3);
    CHECK(lost.diagnostics.witness_certified);
    CHECK(exact_accepts(union_pda(1), lost.witness_word.substr(0, lost.losing_prefix_len)));

    GameOutcome won = solve(union_pda(1), 2, 8);
    CHECK(won.verdict == Verdict::DeterminerWins);
    REQUIRE(won.strategy != nullptr);

    CHECK(solve(union_pda(2), 2, 4).verdict == Verdict::SpoilerWins);
    CHECK(solve(union_pda(2), 3, 9).verdict == Verdict::DeterminerWins);
}

TEST_CASE("no token bound rescues the block language") {
    GameOutcome one = solve(block_pda(), 1, 5);
    CHECK(one.verdict == Verdict::SpoilerWins);
    CHECK(one.witness_word == "##a#b");
    GameOutcome six = solve(block_pda(), 6, 6);
    CHECK(six.verdict == Verdict::DeterminerWins);
}

TEST_CASE("regular restriction keeps the block language hard") {
    Pda prod = product_with_dfa(block_pda(), block_regular_dfa(1));
    GameOutcome g = solve(prod, 1, 6);
    CHECK(g.verdict == Verdict::SpoilerWins);
    CHECK(g.losing_prefix_len == 4);
    CHECK(g.diagnostics.witness_certified);
}

TEST_CASE("deterministic machines need one token") {
    CHECK(solve(multiple_dpda(1), 1, 6).verdict == Verdict::DeterminerWins);
    CHECK(solve(multiple_dpda(3), 1, 6).verdict == Verdict::DeterminerWins);
}

TEST_CASE("suffix flag needs tokens matching the lookback") {
    CHECK(solve(suffix_one_pda(2), 2, 6).verdict == Verdict::DeterminerWins);
    GameOutcome g = solve(suffix_one_pda(2), 1, 4);
    CHECK(g.verdict == Verdict::SpoilerWins);
    CHECK(g.witness_word == "0110");
}

TEST_CASE("mod anchor verdicts") {
    CHECK(solve(mod_pda(2), 2, 6).verdict == Verdict::DeterminerWins);
    GameOutcome g = solve(mod_pda(2), 1, 4);
    CHECK(g.verdict == Verdict::SpoilerWins);
    CHECK(g.witness_word == "100");
    CHECK(g.losing_prefix_len == 2);
}

TEST_CASE("strict checkpoints drop the epsilon grace period") {
    CHECK(solve(suffix_one_pda(2), 2, 6, {.strict_checkpoint = true}).verdict ==
          Verdict::DeterminerWins);
    // the union machine discharges obligations through its epsilon drain, so
    // the strict game flips even though the relaxed one is won
    SolveOptions strict{.strict_checkpoint = true};
    CHECK(solve(union_pda(1), 2, 8, strict).verdict == Verdict::SpoilerWins);
    CHECK(solve(union_pda(1), 2, 8).verdict == Verdict::DeterminerWins);
}

TEST_CASE("resource caps surface as unknown") {
    SolveOptions capped;
    capped.node_cap = 10;
    GameOutcome g = solve(union_pda(1), 2, 8, capped);
    CHECK(g.verdict == Verdict::Unknown);
    CHECK(g.diagnostics.node_cap_hit);

    SolveOptions tiny;
    tiny.eps_budget = 2;
    GameOutcome pumped = solve(eps_pump_pda(), 1, 2, tiny);
    CHECK(pumped.verdict == Verdict::Unknown);
    CHECK(pumped.diagnostics.truncation_seen);
}

TEST_CASE("announced length games pick the token budget from the horizon") {
    GameOutcome exp = solve_parameterized(binary_branch_pda(), [](int n) { return 1LL << n; }, 3);
    CHECK(exp.verdict == Verdict::DeterminerWins);
    CHECK(exp.announced_n == 3);
    CHECK(exp.horizon == 3);
    GameOutcome lin = solve_parameterized(union_pda(1), [](int n) { return (long long)n; }, 4);
    CHECK(lin.verdict == Verdict::DeterminerWins);
    CHECK(lin.announced_n == 4);
    // one token per possible run beats any epsilon free machine
    CHECK(exp_schedule(2)(3) == 8);
    CHECK(exp_schedule(1)(9) == 1);
    CHECK(exp_schedule(3)(40) > 4096); // clamps instead of overflowing
    Pda blk = block_pda();
    GameOutcome per_run =
        solve_parameterized(blk, exp_schedule(max_nondet_branching(blk)), 4);
    CHECK(per_run.verdict == Verdict::DeterminerWins);
    GameOutcome det = solve_parameterized(
        multiple_dpda(2), exp_schedule(max_nondet_branching(multiple_dpda(2))), 6);
    CHECK(det.verdict == Verdict::DeterminerWins);
    CHECK_THROWS_AS(
        solve_parameterized(union_pda(1), [](int n) { return 1LL << n; }, 13),
        ConfigError);
    CHECK_THROWS_AS(
        solve_parameterized(union_pda(1), [](int) { return 0LL; }, 2), ConfigError);
}

TEST_CASE("game parameter guards") {
    CHECK_THROWS_AS(solve(union_pda(1), 0, 3), ConfigError);
    CHECK_THROWS_AS(solve(union_pda(1), 1, -1), ConfigError);
    CHECK_THROWS_AS(solve(union_pda(1), 5000, 2), ConfigError);
}

TEST_CASE("winning tables survive the exhaustive checker") {
    GameOutcome g = solve(union_pda(1), 2, 6);
    REQUIRE(g.verdict == Verdict::DeterminerWins);
    DeterminerStrategy strat;
    strat.solved = g.strategy;
    StrategyCheck chk = check_strategy(union_pda(1), 2, strat, 6);
    CHECK(chk.ok);
    CHECK(chk.failing_play.empty());
}

TEST_CASE("a bad script is caught with a concrete losing play") {
    DeterminerStrategy first_option;
    first_option.scripted = [](const StrategyContext&) { return 0; };
    StrategyCheck chk = check_strategy(union_pda(1), 2, first_option, 6);
    CHECK_FALSE(chk.ok);
    CHECK_FALSE(chk.failing_play.empty());
    CHECK(chk.failing_prefix_len >= 0);
    CHECK(exact_accepts(union_pda(1),
                        chk.failing_play.substr(0, chk.failing_prefix_len)));
}

TEST_CASE("scripts returning junk indices are illegal moves") {
    DeterminerStrategy wild;
    wild.scripted = [](const StrategyContext&) { return 99; };
    CHECK_THROWS_AS(check_strategy(union_pda(1), 1, wild, 2), IllegalMove);
}

TEST_CASE("round robin script needs the counting gadget") {
    CHECK_THROWS_AS(check_strategy(union_pda(1), 2, scripted_round_robin(2), 4),
                    IllegalMove);
}

TEST_CASE("round robin script wins the suffix and mod games") {
    for (int n : {2, 3}) {
        StrategyCheck s = check_strategy(suffix_one_pda(n), n, scripted_round_robin(n),
                                         2 * n + 2);
        CHECK(s.ok);
        StrategyCheck m = check_strategy(mod_pda(n), n, scripted_round_robin(n),
                                         2 * n + 2);
        CHECK(m.ok);
    }
}

TEST_CASE("interactive spoiler can beat one token by switching branches") {
    std::istringstream in("a\nb\nb\n");
    std::ostringstream out;
    Transcript t = play_interactive(union_pda(1), 1, HumanRole::Spoiler, in, out);
    CHECK(t.word == "abb");
    CHECK(t.determiner_lost);
    CHECK(t.loss_prefix_len == 3);
    // the branch-one token dies on the third letter; the obligation for the
    // member prefix is found undischargeable when input runs out
    CHECK(t.quit);
    CHECK(replay_transcript(union_pda(1), t));
}

TEST_CASE("interactive input is validated and re-prompted") {
    std::istringstream in("z\n\nab\na\nquit\n");
    std::ostringstream out;
    Transcript t = play_interactive(union_pda(1), 1, HumanRole::Spoiler, in, out);
    CHECK(t.word == "a");
    CHECK(t.quit);
    CHECK(out.str().find("a") != std::string::npos);
}

TEST_CASE("replay rejects tampered transcripts") {
    std::istringstream in("a\nb\nb\n");
    std::ostringstream out;
    Transcript t = play_interactive(union_pda(1), 1, HumanRole::Spoiler, in, out);
    REQUIRE(replay_transcript(union_pda(1), t));
    Transcript forged = t;
    forged.determiner_lost = false;
    forged.loss_prefix_len = -1;
    CHECK_FALSE(replay_transcript(union_pda(1), forged));
    Transcript shuffled = t;
    shuffled.word = "aba";
    CHECK_FALSE(replay_transcript(union_pda(1), shuffled));
}

TEST_CASE("encoding complement machine stays explorable at small horizons") {
    SolveOptions opts;
    opts.oracle = SolveOptions::Oracle::Bounded;
    GameOutcome g = solve(invalc_pda(demo_tm()), 2, 4, opts);
    CHECK(g.verdict == Verdict::DeterminerWins);
}
