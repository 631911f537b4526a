#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "explor/errors.hpp"
#include "explor/turing.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <string>
#include <vector>

using namespace explor;
using explor::testing::lmove_tm;

TEST_CASE("demo machine is well formed") {
    CHECK(tm_problems(demo_tm()).empty());
    CHECK(tm_problems(lmove_tm()).empty());
}

TEST_CASE("problem reports point at real defects") {
    TuringMachine tm = demo_tm();
    SUBCASE("missing rule breaks totality") {
        tm.delta.pop_back();
        CHECK_FALSE(tm_problems(tm).empty());
    }
    SUBCASE("duplicate rule for one (state, read)") {
        tm.delta.push_back(tm.delta.front());
        CHECK_FALSE(tm_problems(tm).empty());
    }
    SUBCASE("undeclared next state") {
        tm.delta.front().next = "ghost";
        CHECK_FALSE(tm_problems(tm).empty());
    }
    SUBCASE("write outside the tape alphabet") {
        tm.delta.front().write = 'z';
        CHECK_FALSE(tm_problems(tm).empty());
    }
    SUBCASE("start state missing") {
        tm.start = "ghost";
        CHECK_FALSE(tm_problems(tm).empty());
    }
    SUBCASE("blank not on the tape alphabet") {
        tm.blank = '?';
        CHECK_FALSE(tm_problems(tm).empty());
    }
}

TEST_CASE("stepping walks the tape and halts") {
    TuringMachine tm = demo_tm();
    TmConfiguration c = tm_start(tm, "0");
    CHECK(c.state == tm.start);
    CHECK(c.head == 0);
    CHECK(c.tape == "0");
    int steps = 0;
    while (!tm_halted(tm, c)) {
        auto nxt = tm_step(tm, c);
        REQUIRE(nxt.has_value());
        c = *nxt;
        ++steps;
    }
    CHECK(steps == 4);
    CHECK(c.state == tm.accept);
    CHECK_FALSE(tm_step(tm, c).has_value());
}

TEST_CASE("moving left at the left edge stays put") {
    // lmove machine: A_ -> B0 R, B_ -> C0 R, C_ -> D0 L, D0 -> Y0 R
    TuringMachine tm = lmove_tm();
    TmRun run = run_tm(tm, "", 10);
    REQUIRE(run.halted);
    CHECK(run.accepted);
    // force an actual left edge hit: start a machine that moves left first
    TuringMachine edge = tm;
    edge.delta = {{"A", '_', "D", '0', 'L'},
                  {"A", '0', "D", '0', 'L'},
                  {"B", '_', "N", '_', 'R'},
                  {"B", '0', "N", '0', 'R'},
                  {"C", '_', "N", '_', 'R'},
                  {"C", '0', "N", '0', 'R'},
                  {"D", '_', "N", '_', 'R'},
                  {"D", '0', "Y", '0', 'R'}};
    REQUIRE(tm_problems(edge).empty());
    TmConfiguration c = tm_start(edge, "");
    auto nxt = tm_step(edge, c);
    REQUIRE(nxt.has_value());
    CHECK(nxt->head == 0); // left move at cell 0 keeps the head in place
    CHECK(nxt->state == "D");
    CHECK(nxt->tape == "0");
}

TEST_CASE("snapshot strings cover the window up to the head") {
    TuringMachine tm = demo_tm();
    TmConfiguration c = tm_start(tm, "");
    CHECK(id_string(tm, c) == "A_");
    TmRun run = run_tm(tm, "", 10);
    REQUIRE(run.trace.size() == 5);
    std::vector<std::string> ids;
    for (const auto& conf : run.trace) ids.push_back(id_string(tm, conf));
    CHECK(ids == std::vector<std::string>{"A_", "0B_", "A00", "0B0", "00Y_"});
}

TEST_CASE("computation encodings alternate direction") {
    TuringMachine tm = demo_tm();
    SUBCASE("empty input") {
        auto v = valc_string(tm, "", 64);
        REQUIRE(v.has_value());
        CHECK(*v == "#A_#_B0#A00#0B0#00Y_#");
    }
    SUBCASE("single zero") {
        auto v = valc_string(tm, "0", 64);
        REQUIRE(v.has_value());
        CHECK(*v == "#A0#_B0#A00#0B0#00Y_#");
    }
    SUBCASE("two zeros halt too early for an encoding") {
        CHECK_FALSE(valc_string(tm, "00", 64).has_value());
    }
    SUBCASE("step budget cuts the run off") {
        CHECK_FALSE(valc_string(tm, "", 3).has_value());
    }
    SUBCASE("left moving machine") {
        auto v = valc_string(lmove_tm(), "", 64);
        REQUIRE(v.has_value());
        CHECK(*v == "#A_#_B0#00C_#00D0#00Y0#");
    }
}

TEST_CASE("invalid encoding oracle accepts everything except real encodings") {
    TuringMachine tm = demo_tm();
    std::string valc = *valc_string(tm, "", 64);
    CHECK_FALSE(invalc_oracle(tm, valc));
    CHECK_FALSE(invalc_oracle(tm, *valc_string(tm, "0", 64)));
    // junk of all shapes is in the complement
    CHECK(invalc_oracle(tm, ""));
    CHECK(invalc_oracle(tm, "#"));
    CHECK(invalc_oracle(tm, "##"));
    CHECK(invalc_oracle(tm, "#A_#"));
    CHECK(invalc_oracle(tm, "0A#_"));
    // the only substitution that stays valid flips the recorded input cell,
    // which turns the encoding for the empty input into the one for "0"
    std::vector<char> sigma = encoding_alphabet(tm);
    std::vector<std::string> valid_mutants;
    for (std::size_t i = 0; i < valc.size(); ++i)
        for (char c : sigma) {
            if (c == valc[i]) continue;
            std::string mut = valc;
            mut[i] = c;
            if (!invalc_oracle(tm, mut)) valid_mutants.push_back(mut);
        }
    CHECK(valid_mutants == std::vector<std::string>{*valc_string(tm, "0", 64)});
    // dropping or doubling one character breaks it too
    for (std::size_t i = 0; i < valc.size(); ++i) {
        std::string del = valc.substr(0, i) + valc.substr(i + 1);
        CHECK(invalc_oracle(tm, del));
        std::string dup = valc.substr(0, i + 1) + valc.substr(i);
        CHECK(invalc_oracle(tm, dup));
    }
}

TEST_CASE("encoding alphabet is tape, then states, then the separator") {
    CHECK(encoding_alphabet(demo_tm()) ==
          std::vector<char>{'0', '_', 'A', 'B', 'Y', 'N', '#'});
    SUBCASE("multi character state names cannot be encoded") {
        TuringMachine tm = demo_tm();
        tm.states.push_back("XX");
        tm.delta.push_back({"XX", '0', "Y", '0', 'R'});
        tm.delta.push_back({"XX", '_', "Y", '_', 'R'});
        CHECK_THROWS_AS(encoding_alphabet(tm), EncodingOverflow);
    }
    SUBCASE("state names may not collide with tape symbols") {
        TuringMachine tm = demo_tm();
        for (auto& s : tm.states)
            if (s == "B") s = "0";
        for (auto& r : tm.delta) {
            if (r.state == "B") r.state = "0";
            if (r.next == "B") r.next = "0";
        }
        CHECK_THROWS_AS(encoding_alphabet(tm), EncodingOverflow);
    }
    SUBCASE("the separator is reserved") {
        TuringMachine tm = demo_tm();
        for (auto& s : tm.states)
            if (s == "B") s = "#";
        for (auto& r : tm.delta) {
            if (r.state == "B") r.state = "#";
            if (r.next == "B") r.next = "#";
        }
        CHECK_THROWS_AS(encoding_alphabet(tm), EncodingOverflow);
    }
}

TEST_CASE("run traces stop at the step budget") {
    TuringMachine tm = demo_tm();
    TmRun run = run_tm(tm, "", 2);
    CHECK_FALSE(run.halted);
    CHECK_FALSE(run.accepted);
    CHECK(run.trace.size() == 3); // start plus two steps
}
