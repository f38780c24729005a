#include <doctest.h>

#include <algorithm>

#include "napds/cfg.hh"
#include "napds/errors.hh"
#include "napds/readlang.hh"
#include "support/corpus.hh"
#include "support/generators.hh"
#include "support/oracles.hh"

using namespace napds;
using namespace testsupport;

namespace {

// Direct R* w1 R* ... wk R* automaton, built without subword_closure_nfa.
Nfa chain(const Word& w, const std::vector<SymbolId>& sigma) {
    NfaBuilder b(sigma);
    StateId s = b.add_state(w.empty());
    b.set_initial(s);
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (SymbolId c : sigma)
            b.add_transition(s, c, s);
        StateId t = b.add_state(i + 1 == w.size());
        b.add_transition(s, w[i], t);
        s = t;
    }
    for (SymbolId c : sigma)
        b.add_transition(s, c, s);
    return b.build();
}

Nfa empty_nfa(const std::vector<SymbolId>& sigma) {
    NfaBuilder b(sigma);
    b.add_state(false);
    return b.build();
}

Cfg grammar(std::string_view text, SymbolTable& t) { return cfg_to_cnf(parse_grammar(text, t)); }

bool upward_closed(const Cfg& cnf, const std::vector<SymbolId>& sigma, std::size_t n) {
    for (const Word& w : all_words(sigma, n)) {
        if (!closure_member(cnf, w))
            continue;
        for (std::size_t i = 0; i <= w.size(); ++i)
            for (SymbolId c : sigma) {
                Word v = w;
                v.insert(v.begin() + static_cast<std::ptrdiff_t>(i), c);
                if (!closure_member(cnf, v))
                    return false;
            }
    }
    return true;
}

}  // namespace

TEST_SUITE("readlang") {

TEST_CASE("worked example read languages") {
    ParamInstance inst = worked_example();
    ReadAlphabet r = ReadAlphabet::intern(inst);
    const auto sigma = r.all();
    REQUIRE(sigma.size() == 7);
    const SymbolId kill = r.kills[0], ok = r.reads[0][3], go = r.reads[0][4];
    const Nfa all = chain({}, sigma), none = empty_nfa(sigma);
    const std::vector<Nfa> expected{none, all, all, none, chain({kill, ok}, sigma),
                                    chain({kill, go}, sigma)};
    for (ValueId v = 0; v < 6; ++v) {
        CAPTURE(inst.variables[0].values[v]);
        ReadLanguage l = read_language_nfa(inst, r, 0, v);
        CHECK(nfa_equivalent(l.nfa, expected[v]));
    }
    CHECK(inst.symbols->name(kill) == "KILL_x");
    CHECK(inst.symbols->name(ok) == "r(ok)");
}

TEST_CASE("write PDS shape") {
    ParamInstance inst = worked_example();
    ReadAlphabet r = ReadAlphabet::intern(inst);
    WritePds wp = build_write_pds(inst, r, 0, 4);
    REQUIRE(wp.origin.size() == wp.pds.rules.size());
    // every slave rule once, plus one jump to f for the single w(go)
    CHECK(wp.pds.rules.size() == inst.slave.rules.size() + 1);
    CHECK(wp.pds.finals == std::vector<ControlId>{wp.final_control});
    std::size_t jumps = 0;
    for (const auto& rule : wp.pds.rules)
        if (rule.to == wp.final_control) {
            ++jumps;
            CHECK(inst.slave.rules[wp.origin[&rule - wp.pds.rules.data()]].action ==
                  Action::write(0, 4));
        }
    CHECK(jumps == 1);
    CHECK_THROWS_AS(build_write_pds(inst, r, 0, 9), InputError);
    CHECK_THROWS_AS(build_write_pds(inst, r, 3, 0), InputError);
}

TEST_CASE("minimal words of small grammars") {
    SymbolTable t;
    const Cfg anbn = grammar("S -> a S b\nS -> a b\n", t);
    const SymbolId a = *t.lookup("a"), b = *t.lookup("b");
    CHECK(minimal_read_words(anbn) == std::vector<Word>{{a, b}});

    SymbolTable u;
    const Cfg star = grammar("S -> a S\nS -> b S\nS -> eps\n", u);
    CHECK(minimal_read_words(star) == std::vector<Word>{Word{}});

    SymbolTable v;
    const Cfg empty = grammar("S -> a S\n", v);
    CHECK(minimal_read_words(empty).empty());

    SymbolTable w;
    const Cfg two = grammar("S -> a b c\nS -> c\nS -> b a\n", w);
    auto m = minimal_read_words(two);
    std::sort(m.begin(), m.end());
    const SymbolId wa = *w.lookup("a"), wb = *w.lookup("b"), wc = *w.lookup("c");
    std::vector<Word> want{{wb, wa}, {wc}};
    std::sort(want.begin(), want.end());
    CHECK(m == want);
}

TEST_CASE("antichain cap") {
    SymbolTable t;
    std::string text;
    for (char c = 'a'; c <= 'h'; ++c)
        text += std::string("S -> ") + c + "\n";
    const Cfg g = grammar(text, t);
    CHECK(minimal_read_words(g).size() == 8);
    CHECK_THROWS_AS(minimal_read_words(g, 3), ResourceLimitError);
}

TEST_CASE("minimal words agree with the forbidden-set oracle") {
    Rng rng(21);
    const auto sigma = letters(3);
    for (int i = 0; i < 300; ++i) {
        Cfg cnf = cfg_to_cnf(random_cfg(rng, 4, sigma));
        auto got = minimal_read_words(cnf);
        auto want = minimal_words_by_forbidden_sets(cnf);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        REQUIRE(got == want);
        // same upward closure as the bounded language, and an antichain
        for (std::size_t x = 0; x < got.size(); ++x)
            for (std::size_t y = 0; y < got.size(); ++y)
                if (x != y)
                    REQUIRE_FALSE(is_subword(got[x], got[y]));
        auto shortl = bounded_language(cnf, 5);
        for (const Word& w : shortl)
            REQUIRE(std::any_of(got.begin(), got.end(), [&](const Word& m) { return is_subword(m, w); }));
    }
}

TEST_CASE("is_subword") {
    CHECK(is_subword(Word{}, Word{1, 2}));
    CHECK(is_subword(Word{1, 3}, Word{1, 2, 3}));
    CHECK_FALSE(is_subword(Word{3, 1}, Word{1, 2, 3}));
    CHECK_FALSE(is_subword(Word{1, 1}, Word{1}));
}

TEST_CASE("closure_member examples") {
    SymbolTable t;
    const Cfg anbn = grammar("S -> a S b\nS -> a b\n", t);
    const SymbolId a = *t.lookup("a"), b = *t.lookup("b");
    CHECK(closure_member(anbn, Word{a, b}));
    CHECK(closure_member(anbn, Word{b, a, a, b}));
    CHECK(closure_member(anbn, Word{a, a, a, b}));
    CHECK_FALSE(closure_member(anbn, Word{b, b, a, a}));
    CHECK_FALSE(closure_member(anbn, Word{}));
}

TEST_CASE("subword_closure_nfa accepts exactly the insertion closure") {
    Rng rng(22);
    const auto sigma = letters(3);
    for (int i = 0; i < 100; ++i) {
        std::vector<Word> base;
        for (std::size_t k = pick(rng, 3); k > 0; --k)
            base.push_back(random_word(rng, sigma, 3));
        Nfa n = subword_closure_nfa(base, sigma);
        for (const Word& w : all_words(sigma, 5)) {
            const bool want = std::any_of(base.begin(), base.end(),
                                          [&](const Word& m) { return is_subword(m, w); });
            REQUIRE(nfa_accepts_by_paths(n, w) == want);
        }
    }
}

TEST_CASE("closure is upward closed and agrees with the closure NFA") {
    Rng rng(23);
    const auto sigma = letters(2);
    for (int i = 0; i < 60; ++i) {
        Cfg cnf = cfg_to_cnf(random_cfg(rng, 3, sigma));
        Nfa n = subword_closure_nfa(minimal_read_words(cnf), sigma);
        REQUIRE(upward_closed(cnf, sigma, 4));
        for (const Word& w : all_words(sigma, 5))
            REQUIRE(closure_member(cnf, w) == nfa_accepts(n, w));
    }
}

TEST_CASE("closure_grammar generates the upward closure") {
    Rng rng(24);
    const auto sigma = letters(2);
    for (int i = 0; i < 60; ++i) {
        Cfg cnf = cfg_to_cnf(random_cfg(rng, 3, sigma));
        Cfg up = closure_grammar(cnf, sigma);
        REQUIRE(up.is_cnf());
        for (const Word& w : all_words(sigma, 5))
            REQUIRE(cfg_member(up, w) == closure_member(cnf, w));
    }
}

TEST_CASE("corpus read languages match closure membership") {
    for (const auto& entry : corpus()) {
        CAPTURE(entry.name);
        ReadAlphabet r = ReadAlphabet::intern(entry.inst);
        const auto sigma = r.all();
        const std::size_t len = sigma.size() > 6 ? 3 : 4;
        const auto words = all_words(sigma, len);
        for (VarId x = 0; x < entry.inst.variables.size(); ++x)
            for (ValueId v = 0; v < entry.inst.variables[x].values.size(); ++v) {
                const Cfg cnf = write_language_cnf(build_write_pds(entry.inst, r, x, v));
                const Nfa n = read_language_nfa(entry.inst, r, x, v).nfa;
                for (const Word& w : words)
                    REQUIRE(nfa_accepts(n, w) == closure_member(cnf, w));
            }
    }
}

}
