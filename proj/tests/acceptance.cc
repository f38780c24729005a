// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "napds/cfg.hh"
#include "napds/er.hh"
#include "napds/errors.hh"
#include "napds/generate.hh"
#include "napds/oracle.hh"
#include "napds/product.hh"
#include "napds/readlang.hh"
#include "napds/witness.hh"
#include "support/corpus.hh"
#include "support/generators.hh"
#include "support/oracles.hh"

using namespace napds;
using namespace testsupport;

namespace {

constexpr double kWorkedSeconds = 1.0;
constexpr double kOracleSeconds = 300.0;
constexpr double kEngineSeconds = 600.0;
constexpr int kOracleInstances = 300;
constexpr std::uint32_t kMaxSlaves = 3;
constexpr std::size_t kOracleDepth = 25;
constexpr std::size_t kStrictMarked = 8;
constexpr std::size_t kExtendedMarked = 32;
constexpr std::size_t kClosureWordLength = 6;
constexpr int kRandomPds = 200;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

Nfa chain(const Word& w, const std::vector<SymbolId>& sigma) {
    NfaBuilder b(sigma);
    StateId s = b.add_state(w.empty());
    b.set_initial(s);
    for (std::size_t i = 0; i <= w.size(); ++i) {
        for (SymbolId c : sigma)
            b.add_transition(s, c, s);
        if (i == w.size())
            break;
        const StateId t = b.add_state(i + 1 == w.size());
        b.add_transition(s, w[i], t);
        s = t;
    }
    return b.build();
}

void worked_example_criterion() {
    const auto start = Clock::now();
    const ParamInstance inst = worked_example();
    const CheckResult r = check(inst);
    bool ok = r.reachable;
    std::uint32_t n = 0;
    bool replays = false;
    if (r.reachable) {
        const Witness w = reconstruct_witness(inst, r);
        n = w.n;
        replays = replay(inst, w.n, w.trace);
    }
    const double secs = since(start);
    const auto sigma = r.alphabet.all();
    const SymbolId kill = r.alphabet.kills[0];
    // values 1, 2, go, f of x
    const std::vector<std::pair<ValueId, Word>> want{
        {1, {}}, {2, {}}, {4, {kill, r.alphabet.reads[0][3]}}, {5, {kill, r.alphabet.reads[0][4]}}};
    int equal = 0;
    for (const auto& [v, w] : want)
        equal += nfa_equivalent(r.languages[v].nfa, chain(w, sigma)) ? 1 : 0;
    ok = ok && n == 2 && replays && equal == 4 && secs < kWorkedSeconds;
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s, %d/4 read languages as listed, witness n = %u %s, %.3f s (< %.0f s)",
                  r.reachable ? "REACHABLE" : "UNREACHABLE", equal, n, replays ? "replays" : "does not replay",
                  secs, kWorkedSeconds);
    report(1, ok, "worked example", buf);
}

void oracle_soundness_criterion() {
    const auto start = Clock::now();
    Rng rng(20261017);
    InstanceShape shape;
    shape.master_controls = 4;
    shape.slave_controls = 4;
    shape.master_rules = 6;
    shape.slave_rules = 9;
    int reached = 0, agreed = 0, exhausted = 0, cut = 0, several = 0;
    for (int i = 0; i < kOracleInstances; ++i) {
        // every third instance pairs a writer copy with a reader copy
        const ParamInstance inst = [&] {
            if (i % 3 != 2)
                return random_instance(rng, shape);
            SymbolTable names;
            names.intern("a");
            names.intern("b");
            return generate_intersection_instance(random_cfg(rng, 2, letters(2)), random_cfg(rng, 2, letters(2)),
                                                  names);
        }();
        SimResult found;
        bool any_exhausted = false;
        for (std::uint32_t n = 0; n <= kMaxSlaves; ++n) {
            found = simulate(inst, {.n = n, .depth = kOracleDepth});
            if (found.verdict == SimVerdict::reached)
                break;
            any_exhausted = any_exhausted || found.exhausted();
        }
        if (found.verdict != SimVerdict::reached) {
            (any_exhausted ? exhausted : cut) += 1;
            continue;
        }
        ++reached;
        several += std::count_if(found.trace.begin(), found.trace.end(),
                                 [](const TraceStep& t) { return t.process >= 2; }) > 0 ? 1 : 0;
        if (check(inst).reachable)
            ++agreed;
    }
    const double secs = since(start);
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "%d/%d oracle-reached instances REACHABLE (%d need two or more slaves; %d of %d not reached, "
                  "%d with some n exhausted), %.1f s (< %.0f s)",
                  agreed, reached, several, exhausted + cut, kOracleInstances, exhausted, secs, kOracleSeconds);
    report(2, agreed == reached && reached > 0 && secs < kOracleSeconds, "oracle soundness", buf);
}

void engine_criterion() {
    const auto start = Clock::now();
    int strict = 0, strict_ok = 0, extended = 0, extended_ok = 0, skipped = 0;
    for (const auto& e : corpus()) {
        const ReadAlphabet r = ReadAlphabet::intern(e.inst);
        const auto sigma = r.all();
        for (VarId x = 0; x < e.inst.variables.size(); ++x)
            for (ValueId v = 0; v < e.inst.variables[x].values.size(); ++v) {
                const Cfg up = closure_grammar(write_language_cnf(build_write_pds(e.inst, r, x, v)), sigma);
                const std::size_t m = marked_alphabet(up).size();
                if (m > kExtendedMarked) {
                    ++skipped;
                    continue;
                }
                const Nfa closure = read_language_nfa(e.inst, r, x, v).nfa;
                bool same = false;
                try {
                    same = nfa_equivalent(er_nfa(up, {.max_marked = kExtendedMarked}), closure);
                } catch (const std::exception&) {
                }
                if (m <= kStrictMarked) {
                    ++strict;
                    strict_ok += same ? 1 : 0;
                }
                ++extended;
                extended_ok += same ? 1 : 0;
            }
    }
    const double secs = since(start);
    char buf[260];
    std::snprintf(buf, sizeof buf,
                  "%d/%d grammars with marked alphabet <= %zu; extended run %d/%d with <= %zu (%d larger "
                  "skipped), %.1f s (< %.0f s)",
                  strict_ok, strict, kStrictMarked, extended_ok, extended, kExtendedMarked, skipped, secs,
                  kEngineSeconds);
    report(3, strict_ok == strict && strict > 0 && extended_ok == extended && secs < kEngineSeconds,
           "engine cross-validation", buf);
}

void closure_criterion() {
    long words = 0, mismatches = 0;
    int languages = 0;
    for (const auto& e : corpus()) {
        const ReadAlphabet r = ReadAlphabet::intern(e.inst);
        const auto all = all_words(r.all(), kClosureWordLength);
        for (VarId x = 0; x < e.inst.variables.size(); ++x)
            for (ValueId v = 0; v < e.inst.variables[x].values.size(); ++v) {
                const Cfg cnf = write_language_cnf(build_write_pds(e.inst, r, x, v));
                const Nfa n = read_language_nfa(e.inst, r, x, v).nfa;
                ++languages;
                for (const Word& w : all) {
                    ++words;
                    if (nfa_accepts(n, w) != closure_member(cnf, w))
                        ++mismatches;
                }
            }
    }
    report(4, mismatches == 0, "closure correctness",
           std::to_string(words - mismatches) + "/" + std::to_string(words) + " words agree across " +
               std::to_string(languages) + " write PDSs (length <= " + std::to_string(kClosureWordLength) + ")");
}

bool replays_pds(const Pds& p, const std::vector<RuleId>& trace, std::span<const ControlId> targets) {
    PdsConfig c{p.initial, {kBottom}};
    for (RuleId r : trace) {
        auto next = pds_apply(p, c, r);
        if (!next)
            return false;
        c = *next;
    }
    return std::find(targets.begin(), targets.end(), c.control) != targets.end();
}

void saturation_criterion() {
    Rng rng(20261018);
    int exact = 0, exact_ok = 0, bfs_reached = 0, implied = 0, traces = 0, traces_ok = 0;
    for (int i = 0; i < kRandomPds; ++i) {
        const Pds p = random_pds(rng, 4, 3, {}, 2 + pick(rng, 10));
        const std::vector<ControlId> targets{static_cast<ControlId>(pick(rng, p.controls.size()))};
        const auto sat = pds_control_reachable(p, targets);
        const auto bfs = pds_bfs(p, targets, 8, 10'000);
        if (bfs.reachable) {
            ++bfs_reached;
            implied += sat.reachable ? 1 : 0;
        }
        if (!bfs.truncated) {
            ++exact;
            exact_ok += bfs.reachable == sat.reachable ? 1 : 0;
        }
        if (sat.reachable) {
            ++traces;
            traces_ok += replays_pds(p, sat.trace, targets) ? 1 : 0;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "%d/%d untruncated agree, %d/%d BFS-reachable found, %d/%d traces replay",
                  exact_ok, exact, implied, bfs_reached, traces_ok, traces);
    report(5, exact_ok == exact && implied == bfs_reached && traces_ok == traces, "saturation vs BFS", buf);
}

void property_criterion() {
    Rng rng(20261019);
    std::vector<std::string> failed;
    const auto sigma = letters(2);

    bool cnf_ok = true;
    for (int i = 0; i < 100 && cnf_ok; ++i) {
        const Cfg g = random_cfg(rng, 4, sigma);
        const Cfg cnf = cfg_to_cnf(g);
        const auto want = bounded_language(g, 6);
        for (const Word& w : all_words(sigma, 6))
            cnf_ok = cnf_ok && cfg_member(cnf, w) == want.contains(w);
    }
    if (!cnf_ok)
        failed.push_back("CNF preservation");

    bool anti_ok = true;
    for (int i = 0; i < 100 && anti_ok; ++i) {
        const Cfg cnf = cfg_to_cnf(random_cfg(rng, 4, letters(3)));
        auto got = minimal_read_words(cnf);
        auto want = minimal_words_by_forbidden_sets(cnf);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        anti_ok = got == want;
        for (std::size_t a = 0; a < got.size(); ++a)
            for (std::size_t b = 0; b < got.size(); ++b)
                anti_ok = anti_ok && (a == b || !is_subword(got[a], got[b]));
    }
    if (!anti_ok)
        failed.push_back("antichain");

    bool up_ok = true;
    for (const auto& e : corpus()) {
        const ReadAlphabet r = ReadAlphabet::intern(e.inst);
        const auto all = r.all();
        for (const ReadLanguage& l : build_read_languages(e.inst, r))
            for (int k = 0; k < 200; ++k) {
                Word w = random_word(rng, all, 6);
                if (!nfa_accepts(l.nfa, w))
                    continue;
                w.insert(w.begin() + static_cast<std::ptrdiff_t>(pick(rng, w.size() + 1)), all[pick(rng, all.size())]);
                up_ok = up_ok && nfa_accepts(l.nfa, w);
            }
    }
    if (!up_ok)
        failed.push_back("insertion closure");

    bool sym_ok = true, wit_ok = true;
    int witnesses = 0;
    for (int i = 0; i < 100; ++i) {
        const ParamInstance inst = random_instance(rng);
        const std::uint32_t n = static_cast<std::uint32_t>(pick(rng, 3));
        const SimResult a = simulate(inst, {.n = n, .depth = 10, .symmetry = false});
        const SimResult b = simulate(inst, {.n = n, .depth = 10});
        if (a.verdict != SimVerdict::inconclusive && b.verdict != SimVerdict::inconclusive)
            sym_ok = sym_ok && a.verdict == b.verdict && a.trace.size() == b.trace.size();
        const CheckResult r = check(inst);
        if (r.reachable) {
            ++witnesses;
            const Witness w = reconstruct_witness(inst, r);
            wit_ok = wit_ok && replay(inst, w.n, w.trace);
        }
    }
    if (!sym_ok)
        failed.push_back("oracle symmetry");
    if (!wit_ok || witnesses == 0)
        failed.push_back("witness replay");

    std::string detail = failed.empty() ? "CNF preservation, antichain, insertion closure, oracle symmetry, "
                                          "witness replay (" + std::to_string(witnesses) + " witnesses) hold"
                                        : "failed:";
    for (const auto& f : failed)
        detail += " " + f;
    report(6, failed.empty(), "property suites", detail);
}

void negative_control_criterion() {
    const ParamInstance inst = worked_example_without_f();
    const bool unreachable = !check(inst).reachable;
    int exhausted = 0;
    for (std::uint32_t n = 0; n <= kMaxSlaves; ++n)
        exhausted += simulate(inst, {.n = n, .depth = kOracleDepth}).exhausted() ? 1 : 0;
    report(7, unreachable && exhausted == static_cast<int>(kMaxSlaves) + 1, "negative control",
           std::string(unreachable ? "UNREACHABLE" : "REACHABLE") + ", oracle exhausted for " +
               std::to_string(exhausted) + "/" + std::to_string(kMaxSlaves + 1) + " values of n <= " +
               std::to_string(kMaxSlaves) + " at depth " + std::to_string(kOracleDepth));
}

}  // namespace

int main() {
    const std::vector<void (*)()> criteria{worked_example_criterion, oracle_soundness_criterion,
                                           engine_criterion,         closure_criterion,
                                           saturation_criterion,     property_criterion,
                                           negative_control_criterion};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            report(static_cast<int>(i + 1), false, "criterion", std::string("threw: ") + e.what());
        }
    }
    return failures == 0 ? 0 : 1;
}
