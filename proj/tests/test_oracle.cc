#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "napds/errors.hh"
#include "napds/oracle.hh"
#include "support/corpus.hh"
#include "support/generators.hh"

using namespace napds;
using namespace testsupport;

TEST_SUITE("oracle") {

TEST_CASE("worked example needs two slaves") {
    const ParamInstance inst = worked_example();
    const SimResult one = simulate(inst, {.n = 1, .depth = 25});
    CHECK(one.verdict == SimVerdict::not_reached);
    CHECK(one.exhausted());
    const SimResult two = simulate(inst, {.n = 2, .depth = 25});
    REQUIRE(two.verdict == SimVerdict::reached);
    CHECK(two.trace.size() == 10);
    CHECK(replay(inst, 2, two.trace));
}

TEST_CASE("a short depth bound is reported as a cut") {
    const SimResult s = simulate(worked_example(), {.n = 2, .depth = 5});
    CHECK(s.verdict == SimVerdict::not_reached);
    CHECK(s.depth_cut);
    CHECK_FALSE(s.exhausted());
}

TEST_CASE("config cap gives inconclusive") {
    const SimResult s = simulate(worked_example(), {.n = 3, .depth = 25, .max_configs = 20});
    CHECK(s.verdict == SimVerdict::inconclusive);
    CHECK_FALSE(s.exhausted());
}

TEST_CASE("replay rejects broken traces") {
    const ParamInstance inst = worked_example();
    const SimResult s = simulate(inst, {.n = 2});
    REQUIRE(s.verdict == SimVerdict::reached);
    Trace t = s.trace;
    // move the master's first read ahead of every write
    auto m = std::find_if(t.begin(), t.end(), [](const TraceStep& x) { return x.process == 0; });
    REQUIRE(m != t.begin());
    std::rotate(t.begin(), m, m + 1);
    CHECK_FALSE(replay(inst, 2, t));
    Trace shorter(s.trace.begin(), s.trace.end() - 1);
    CHECK_FALSE(replay(inst, 2, shorter));
    CHECK_FALSE(replay(inst, 2, {}));
    CHECK_THROWS_AS(replay(inst, 2, {{3, 0}}), InputError);
    CHECK_THROWS_AS(replay(inst, 2, {{0, 99}}), InputError);
}

TEST_CASE("empty trace replays when the target is initial") {
    ParamInstance inst = worked_example();
    inst.target = inst.master.initial;
    CHECK(replay(inst, 0, {}));
    const SimResult s = simulate(inst, {.n = 0});
    CHECK(s.verdict == SimVerdict::reached);
    CHECK(s.trace.empty());
}

TEST_CASE("renaming slaves preserves replay") {
    const ParamInstance inst = load_instance("tests/corpus/two-vars.napds");
    const SimResult s = simulate(inst, {.n = 3});
    REQUIRE(s.verdict == SimVerdict::reached);
    std::vector<std::uint32_t> perm{1, 2, 3};
    do {
        Trace t = s.trace;
        for (TraceStep& x : t)
            if (x.process != 0)
                x.process = perm[x.process - 1];
        CHECK(replay(inst, 3, t));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("symmetry reduction and deduplication keep verdicts") {
    Rng rng(51);
    for (int i = 0; i < 60; ++i) {
        const ParamInstance inst = random_instance(rng);
        const std::uint32_t n = static_cast<std::uint32_t>(pick(rng, 3));
        const SimResult full = simulate(inst, {.n = n, .depth = 10, .symmetry = false});
        const SimResult sym = simulate(inst, {.n = n, .depth = 10});
        const SimResult tree = simulate(inst, {.n = n, .depth = 5, .max_configs = 300'000, .dedup = false});
        const SimResult sym5 = simulate(inst, {.n = n, .depth = 5});
        if (full.verdict == SimVerdict::inconclusive || sym.verdict == SimVerdict::inconclusive)
            continue;
        REQUIRE(full.verdict == sym.verdict);
        if (sym.verdict == SimVerdict::reached) {
            REQUIRE(full.trace.size() == sym.trace.size());
            REQUIRE(replay(inst, n, sym.trace));
            REQUIRE(replay(inst, n, full.trace));
        }
        CHECK(sym.explored <= full.explored);
        if (tree.verdict != SimVerdict::inconclusive)
            REQUIRE(tree.verdict == sym5.verdict);
    }
}

TEST_CASE("reachability is monotone in n and in depth") {
    Rng rng(52);
    for (int i = 0; i < 60; ++i) {
        const ParamInstance inst = random_instance(rng);
        bool before = false;
        for (std::uint32_t n = 0; n <= 3; ++n) {
            const SimResult s = simulate(inst, {.n = n, .depth = 12});
            if (s.verdict == SimVerdict::inconclusive)
                break;
            const bool now = s.verdict == SimVerdict::reached;
            REQUIRE((!before || now));
            before = now;
        }
        bool deeper = false;
        for (std::size_t d : {4, 8, 12}) {
            const SimResult s = simulate(inst, {.n = 2, .depth = d});
            if (s.verdict == SimVerdict::inconclusive)
                break;
            const bool now = s.verdict == SimVerdict::reached;
            REQUIRE((!deeper || now));
            deeper = now;
        }
    }
}

}
