// The product PDS that runs the master against the read-language automata,
// and the parameterised reachability check built on it.
#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "napds/detail/hash.hh"
#include "napds/er.hh"
#include "napds/napds.hh"
#include "napds/readlang.hh"
#include "napds/saturation.hh"

namespace napds {

/// Variable component value standing for KILL_i.
inline constexpr ValueId kKilled = static_cast<ValueId>(-1);

struct ProductControl {
    ControlId master;
    std::vector<StateId> nfa;  // one per (var, value), see ProductPds::component
    std::vector<ValueId> vals;  // one per variable, kKilled for KILL_i

    friend bool operator==(const ProductControl&, const ProductControl&) = default;
};

enum class StepKind : std::uint8_t { master, nfa_read, nfa_kill, accepted_write };

struct ProductStep {
    StepKind kind;
    RuleId master_rule = 0;  // master
    std::uint32_t component = 0;  // the other kinds: which read language
    VarId var = 0;  // nfa_read / nfa_kill: the variable read or killed
    SymbolId symbol = 0;  // nfa_read / nfa_kill: the R symbol consumed
    ControlId from = 0, to = 0;
};

/// Lazily explored product. Controls are interned on first sight; every rule
/// handed to the saturation gets a fresh id naming its ProductStep.
class ProductPds {
public:
    ProductPds(const ParamInstance& inst, const ReadAlphabet& alphabet,
               std::vector<ReadLanguage> languages);

    ControlId initial_control();
    std::vector<SaturationRule> rules_from(ControlId c, SymbolId top);

    bool is_target(ControlId c) const { return controls_[c].master == inst_.target; }
    const ProductControl& control(ControlId c) const { return controls_.at(c); }
    const ProductStep& step(RuleId r) const { return steps_.at(r); }
    std::size_t num_controls() const noexcept { return controls_.size(); }

    std::uint32_t component(VarId var, ValueId value) const { return offsets_.at(var) + value; }
    const std::vector<ReadLanguage>& languages() const noexcept { return languages_; }

private:
    ControlId intern(ProductControl c);
    RuleId add_step(ProductStep s);

    const ParamInstance& inst_;
    ReadAlphabet alphabet_;
    std::vector<ReadLanguage> languages_;
    std::vector<std::uint32_t> offsets_;
    std::vector<ProductControl> controls_;
    std::unordered_map<std::vector<std::uint32_t>, ControlId, detail::VectorHash> index_;
    std::vector<ProductStep> steps_;
    std::unordered_map<std::pair<ControlId, SymbolId>, std::vector<RuleId>, detail::PairHash> master_index_;
};

enum class Engine { closure, er };

struct CheckOptions {
    Engine engine = Engine::closure;
    std::size_t max_antichain = kDefaultAntichainCap;
    ErOptions er;
    SaturationLimits saturation;
    bool parallel = true;
};

struct CheckResult {
    bool reachable = false;
    ReadAlphabet alphabet;
    std::vector<ReadLanguage> languages;
    std::vector<ProductStep> trace;  // product run, when reachable
    std::vector<ProductControl> controls;  // trace.size() + 1 controls along it
    std::size_t explored_controls = 0;
};

/// One read language per (var, value), in component order. Resource limits
/// are rethrown tagged with the stage and the (var, value) pair.
std::vector<ReadLanguage> build_read_languages(const ParamInstance& inst, const ReadAlphabet& r,
                                               const CheckOptions& options = {});

CheckResult check(const ParamInstance& inst, const CheckOptions& options = {});

/// Runs the saturation on a prepared product.
CheckResult check_product(const ParamInstance& inst, const ReadAlphabet& r,
                          std::vector<ReadLanguage> languages, const SaturationLimits& limits = {});

}  // namespace napds
