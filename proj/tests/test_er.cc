#include <doctest.h>

#include <algorithm>
#include <map>

#include "napds/cfg.hh"
#include "napds/er.hh"
#include "napds/errors.hh"
#include "napds/readlang.hh"
#include "support/corpus.hh"
#include "support/generators.hh"
#include "support/oracles.hh"

using namespace napds;
using namespace testsupport;

namespace {

Cfg grammar(std::string_view text, SymbolTable& t) { return cfg_to_cnf(parse_grammar(text, t)); }

// Plain CYK-free membership by splitting, memoised on (nonterminal, word).
class Deriver {
public:
    explicit Deriver(const Cfg& g) : g_(g) {}

    bool derives(NontermId a, const Word& w) {
        auto key = std::make_pair(a, w);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        bool ok = false;
        for (const Production& p : g_.productions()) {
            if (p.head != a || ok)
                continue;
            if (p.body.size() == 1)
                ok = w.size() == 1 && w[0] == p.body[0].id;
            else
                for (std::size_t i = 1; i < w.size() && !ok; ++i)
                    ok = derives(p.body[0].id, Word(w.begin(), w.begin() + i)) &&
                         derives(p.body[1].id, Word(w.begin() + i, w.end()));
        }
        memo_[key] = ok;
        return ok;
    }

private:
    const Cfg& g_;
    std::map<std::pair<NontermId, Word>, bool> memo_;
};

// Marked spines of A reaching the last letter of w, right siblings erased,
// at most `depth` marks long.
void spines(const Cfg& g, const std::vector<MarkedSymbol>& m, const std::vector<bool>& productive,
            Deriver& d, NontermId a, const Word& w, std::size_t depth, std::vector<std::uint32_t>& cur,
            std::vector<std::vector<std::uint32_t>>& out) {
    if (depth == 0 || w.empty())
        return;
    for (std::uint32_t i = 0; i < m.size(); ++i) {
        const MarkedSymbol& s = m[i];
        if (s.kind == MarkedSymbol::Kind::leaf || s.head != a)
            continue;
        cur.push_back(i);
        if (s.kind == MarkedSymbol::Kind::terminal) {
            if (w.size() == 1 && w[0] == s.terminal)
                out.push_back(cur);
        } else if (s.dir == 1) {
            if (productive[s.right])
                spines(g, m, productive, d, s.left, w, depth - 1, cur, out);
        } else {
            for (std::size_t k = 1; k < w.size(); ++k)
                if (d.derives(s.left, Word(w.begin(), w.begin() + k)))
                    spines(g, m, productive, d, s.right, Word(w.begin() + k, w.end()), depth - 1, cur, out);
        }
        cur.pop_back();
    }
}

std::vector<std::vector<std::uint32_t>> all_spines(const Cfg& g, const Word& w, std::size_t depth) {
    const auto m = marked_alphabet(g);
    Deriver d(g);
    std::vector<std::uint32_t> cur;
    std::vector<std::vector<std::uint32_t>> out;
    spines(g, m, productive_nonterminals(g), d, g.start(), w, depth, cur, out);
    return out;
}

Nfa star(const std::vector<SymbolId>& sigma) {
    NfaBuilder b(sigma);
    b.add_state(true);
    for (SymbolId c : sigma)
        b.add_transition(0, c, 0);
    return b.build();
}

}  // namespace

TEST_SUITE("er") {

TEST_CASE("marked alphabet of S -> A B, A -> a, B -> b") {
    SymbolTable t;
    const Cfg g = grammar("S -> A B\nA -> a\nB -> b\n", t);
    const auto m = marked_alphabet(g);
    REQUIRE(m.size() == 6);
    CHECK(marked_name(m[0], g, t) == "(S,A,B,1)");
    CHECK(marked_name(m[1], g, t) == "(S,A,B,2)");
    CHECK(marked_name(m[2], g, t) == "(A,a)");
    CHECK(marked_name(m[3], g, t) == "(B,b)");
    CHECK(marked_name(m[4], g, t) == "a");
    CHECK(marked_name(m[5], g, t) == "b");
}

TEST_CASE("marked alphabet size formula") {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const Cfg g = cfg_to_cnf(random_cfg(rng, 4, letters(3)));
        std::size_t bin = 0, term = 0;
        for (const auto& p : g.productions())
            (p.body.size() == 2 ? bin : term) += 1;
        REQUIRE(marked_alphabet(g).size() == 2 * bin + term + g.terminals().size());
    }
}

TEST_CASE("type enumeration") {
    CHECK(enumerate_types(1).size() == 1);
    CHECK(enumerate_types(2).size() == 4);
    CHECK(enumerate_types(3).size() == 15);
    CHECK(enumerate_types(4).size() == 64);
    CHECK(enumerate_types(2) == std::vector<SpineType>{{0}, {1}, {0, 1}, {1, 0}});
    CHECK_THROWS_AS(enumerate_types(9), ResourceLimitError);
    CHECK(enumerate_types(9, 9).size() == 986409);
}

TEST_CASE("type NFA agrees with the block oracle") {
    CHECK(type_nfa({0, 1}, 3).num_states() == 5);
    const std::vector<SymbolId> sigma{0, 1, 2};
    for (const SpineType& x : enumerate_types(3)) {
        const Nfa a = type_nfa(x, 3);
        for (const Word& z : all_words(sigma, 6))
            REQUIRE(nfa_accepts(a, z) == has_type(z, x));
    }
    const Nfa a = type_nfa({0, 1}, 3);
    CHECK(nfa_accepts(a, Word{0, 1}));
    CHECK(nfa_accepts(a, Word{0, 2, 1, 0, 1}));
    CHECK_FALSE(nfa_accepts(a, Word{0, 1, 0}));
    CHECK_FALSE(nfa_accepts(a, Word{1, 0}));
}

TEST_CASE("typed grammars of S -> A B") {
    SymbolTable t;
    const Cfg g = grammar("S -> A B\nA -> a\nB -> b\n", t);
    const auto m = marked_alphabet(g);
    const SymbolId a = *t.lookup("a"), b = *t.lookup("b");
    CHECK(bounded_language(typed_grammar(g, m, {0, 2}), 4) == std::set<Word>{{a}});
    CHECK(bounded_language(typed_grammar(g, m, {1, 3}), 4) == std::set<Word>{{a, b}});
    CHECK(bounded_language(typed_grammar(g, m, {0, 3}), 4).empty());
    CHECK(bounded_language(typed_grammar(g, m, {2}), 4).empty());
}

TEST_CASE("typed grammars match spine enumeration") {
    Rng rng(32);
    const auto sigma = letters(2);
    int checked = 0;
    for (int i = 0; i < 80 && checked < 40; ++i) {
        const Cfg g = cfg_to_cnf(random_cfg(rng, 3, sigma));
        if (marked_alphabet(g).size() > 7 || cfg_is_empty(g))
            continue;
        ++checked;
        SpineTypeIndex index(g, {.max_marked = 7});
        for (const Word& w : all_words(sigma, 3)) {
            const auto found = all_spines(g, w, 10);
            const auto got = index.types_of(w);
            for (std::size_t k = 0; k < index.types().size(); ++k) {
                const bool want = std::any_of(found.begin(), found.end(),
                                              [&](const auto& z) { return has_type(z, index.types()[k]); });
                // the bounded enumeration can only miss spines
                if (want)
                    REQUIRE(got[k]);
            }
            for (const auto& z : found) {
                const bool typed = std::any_of(index.types().begin(), index.types().end(),
                                               [&](const SpineType& x) { return has_type(z, x); });
                const bool covered = std::any_of(got.begin(), got.end(), [](bool b) { return b; });
                REQUIRE((!typed || covered));
            }
        }
    }
    CHECK(checked >= 20);
}

TEST_CASE("spine classes of a*") {
    SymbolTable t;
    const Cfg g = grammar("S -> S S\nS -> a\nS -> eps\n", t);
    const SymbolId a = *t.lookup("a");
    // a has a single terminal spine; from aa on binary marks appear too
    CHECK_FALSE(spine_types_equal(g, Word{a}, Word{a, a}));
    CHECK(spine_types_equal(g, Word{a, a}, Word{a, a, a}));
    CHECK(spine_types_equal(g, Word{a, a}, Word{a, a, a, a, a}));
    const Nfa n = er_nfa(g);
    CHECK(n.num_states() == 3);
    CHECK(nfa_equivalent(n, star({a})));
}

TEST_CASE("empty language has no final state") {
    SymbolTable t;
    const Cfg g = cfg_to_cnf(closure_grammar(grammar("S -> a S\n", t), {1, 2}));
    const Nfa n = er_nfa(g);
    CHECK(nfa_is_empty(n));
    CHECK(nfa_empty_by_search(n));
}

TEST_CASE("non-degenerate languages are rejected") {
    SymbolTable t;
    // odd-length words: a and aa share their spine types but not membership
    CHECK_THROWS_AS(er_nfa(grammar("S -> S S S\nS -> a\n", t), {.max_marked = 16}),
                    PreconditionViolation);
    SymbolTable u;
    CHECK_THROWS_AS(er_nfa(grammar("S -> A B\nA -> a\nB -> b\n", u), {.max_marked = 2}),
                    ResourceLimitError);
}

TEST_CASE("state cap") {
    SymbolTable t;
    const Cfg g = closure_grammar(grammar("S -> a b\n", t), {*t.lookup("a"), *t.lookup("b")});
    CHECK_THROWS_AS(er_nfa(g, {.max_marked = 64, .max_states = 2}), ResourceLimitError);
    CHECK_NOTHROW(er_nfa(g, {.max_marked = 64}));
}

TEST_CASE("closure grammars: ER matches the subword closure") {
    Rng rng(33);
    const auto sigma = letters(2);
    int built = 0;
    for (int i = 0; i < 40; ++i) {
        const Cfg base = cfg_to_cnf(random_cfg(rng, 2, sigma));
        const auto words = minimal_read_words(base);
        const Cfg up = closure_grammar(base, sigma);
        if (marked_alphabet(up).size() > 14)
            continue;
        const Nfa er = er_nfa(up, {.max_marked = 64});
        REQUIRE(nfa_equivalent(er, subword_closure_nfa(words, sigma)));
        ++built;
    }
    CHECK(built >= 10);
}

TEST_CASE("worked example languages through ER") {
    ParamInstance inst = worked_example();
    ReadAlphabet r = ReadAlphabet::intern(inst);
    const auto sigma = r.all();
    for (ValueId v = 0; v < inst.variables[0].values.size(); ++v) {
        const Cfg cnf = write_language_cnf(build_write_pds(inst, r, 0, v));
        const Cfg up = closure_grammar(cnf, sigma);
        const Nfa er = er_nfa(up, {.max_marked = 64});
        CHECK(nfa_equivalent(er, read_language_nfa(inst, r, 0, v).nfa));
    }
}

TEST_CASE("construction is deterministic") {
    SymbolTable t;
    const Cfg base = grammar("S -> a b\nS -> b\n", t);
    const Cfg up = closure_grammar(base, {*t.lookup("a"), *t.lookup("b")});
    const Nfa x = er_nfa(up, {.max_marked = 64}), y = er_nfa(up, {.max_marked = 64});
    REQUIRE(x.num_states() == y.num_states());
    CHECK(x.finals() == y.finals());
    for (StateId s = 0; s < x.num_states(); ++s)
        CHECK(std::ranges::equal(x.transitions(s), y.transitions(s)));
}

TEST_CASE("spine types of the closure are monotone under insertion") {
    // In an upward-closed language a longer word has every spine type the
    // shorter one has once a letter is appended: membership cannot drop.
    SymbolTable t;
    const Cfg base = grammar("S -> a b\n", t);
    const std::vector<SymbolId> sigma{*t.lookup("a"), *t.lookup("b")};
    const Cfg up = closure_grammar(base, sigma);
    for (const Word& w : all_words(sigma, 4))
        for (SymbolId c : sigma) {
            Word v = w;
            v.push_back(c);
            if (cfg_member(up, w))
                CHECK(cfg_member(up, v));
        }
}

}
