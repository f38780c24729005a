#include "napds/product.hh"

#include <future>

#include "napds/errors.hh"

namespace napds {

ProductPds::ProductPds(const ParamInstance& inst, const ReadAlphabet& alphabet,
                       std::vector<ReadLanguage> languages)
    : inst_(inst), alphabet_(alphabet), languages_(std::move(languages)) {
    std::uint32_t offset = 0;
    for (const Variable& v : inst.variables) {
        offsets_.push_back(offset);
        offset += static_cast<std::uint32_t>(v.values.size());
    }
    if (languages_.size() != offset)
        throw ContractError("ProductPds needs one read language per (variable, value)");
    for (const ReadLanguage& l : languages_)
        if (component(l.var, l.value) != static_cast<std::uint32_t>(&l - languages_.data()))
            throw ContractError("ProductPds read languages are out of component order");
    for (RuleId i = 0; i < inst.master.rules.size(); ++i)
        master_index_[{inst.master.rules[i].from, inst.master.rules[i].top}].push_back(i);
}

ControlId ProductPds::intern(ProductControl c) {
    std::vector<std::uint32_t> key;
    key.reserve(1 + c.nfa.size() + c.vals.size());
    key.push_back(c.master);
    key.insert(key.end(), c.nfa.begin(), c.nfa.end());
    key.insert(key.end(), c.vals.begin(), c.vals.end());
    auto [it, inserted] = index_.try_emplace(std::move(key), static_cast<ControlId>(controls_.size()));
    if (inserted)
        controls_.push_back(std::move(c));
    return it->second;
}

RuleId ProductPds::add_step(ProductStep s) {
    steps_.push_back(s);
    return static_cast<RuleId>(steps_.size() - 1);
}

ControlId ProductPds::initial_control() {
    ProductControl c{inst_.master.initial, {}, {}};
    for (const ReadLanguage& l : languages_)
        c.nfa.push_back(l.nfa.initial());
    for (const Variable& v : inst_.variables)
        c.vals.push_back(v.initial);
    return intern(std::move(c));
}

std::vector<SaturationRule> ProductPds::rules_from(ControlId id, SymbolId top) {
    const ProductControl c = controls_[id];
    std::vector<SaturationRule> out;
    auto emit = [&](ProductStep step, ProductControl next, Word push) {
        step.from = id;
        step.to = intern(std::move(next));
        out.push_back({add_step(step), step.to, std::move(push)});
    };

    if (auto it = master_index_.find({c.master, top}); it != master_index_.end()) {
        for (RuleId r : it->second) {
            const NaRule& rule = inst_.master.rules[r];
            ProductControl next = c;
            next.master = rule.to;
            if (rule.action.kind == ActionKind::read && c.vals[rule.action.var] != rule.action.value)
                continue;
            if (rule.action.kind == ActionKind::write)
                next.vals[rule.action.var] = rule.action.value;
            emit({StepKind::master, r}, std::move(next), rule.push);
        }
    }

    for (std::uint32_t i = 0; i < languages_.size(); ++i) {
        const ReadLanguage& lang = languages_[i];
        const StateId s = c.nfa[i];
        if (lang.nfa.is_final(s)) {
            if (c.vals[lang.var] != lang.value) {
                ProductControl next = c;
                next.vals[lang.var] = lang.value;
                emit({StepKind::accepted_write, 0, i, lang.var}, std::move(next), {top});
            }
            continue;
        }
        for (VarId l = 0; l < c.vals.size(); ++l) {
            if (c.vals[l] != kKilled) {
                const SymbolId sym = alphabet_.reads[l][c.vals[l]];
                for (StateId t : lang.nfa.post(s, sym)) {
                    ProductControl next = c;
                    next.nfa[i] = t;
                    emit({StepKind::nfa_read, 0, i, l, sym}, std::move(next), {top});
                }
            }
            const SymbolId kill = alphabet_.kills[l];
            for (StateId t : lang.nfa.post(s, kill)) {
                ProductControl next = c;
                next.nfa[i] = t;
                next.vals[l] = kKilled;
                emit({StepKind::nfa_kill, 0, i, l, kill}, std::move(next), {top});
            }
        }
    }
    return out;
}

namespace {

ReadLanguage one_language(const ParamInstance& inst, const ReadAlphabet& r, VarId var, ValueId value,
                          const CheckOptions& options) {
    const std::string stage = "readlang " + inst.variables[var].name + "=" + inst.variables[var].values[value];
    try {
        if (options.engine == Engine::closure)
            return read_language_nfa(inst, r, var, value, options.max_antichain);
        WritePds wp = build_write_pds(inst, r, var, value);
        Cfg closure = closure_grammar(write_language_cnf(wp), r.all());
        return {var, value, er_nfa(closure, options.er)};
    } catch (const ResourceLimitError& e) {
        throw e.tagged(stage);
    }
}

}  // namespace

std::vector<ReadLanguage> build_read_languages(const ParamInstance& inst, const ReadAlphabet& r,
                                               const CheckOptions& options) {
    std::vector<std::pair<VarId, ValueId>> pairs;
    for (VarId v = 0; v < inst.variables.size(); ++v)
        for (ValueId g = 0; g < inst.variables[v].values.size(); ++g)
            pairs.emplace_back(v, g);
    std::vector<ReadLanguage> out;
    if (!options.parallel) {
        for (auto [v, g] : pairs)
            out.push_back(one_language(inst, r, v, g, options));
        return out;
    }
    std::vector<std::future<ReadLanguage>> jobs;
    for (auto [v, g] : pairs)
        jobs.push_back(std::async(std::launch::async, [&, v = v, g = g] {
            return one_language(inst, r, v, g, options);
        }));
    for (auto& job : jobs)
        out.push_back(job.get());
    return out;
}

CheckResult check_product(const ParamInstance& inst, const ReadAlphabet& r,
                          std::vector<ReadLanguage> languages, const SaturationLimits& limits) {
    CheckResult result;
    result.alphabet = r;
    ProductPds product(inst, r, languages);
    Saturation<ProductPds> sat(product, [&](ControlId c) { return product.is_target(c); }, limits);
    result.reachable = sat.run();
    if (result.reachable) {
        const ControlId init = product.initial_control();
        result.controls.push_back(product.control(init));
        for (RuleId id : sat.trace()) {
            result.trace.push_back(product.step(id));
            result.controls.push_back(product.control(result.trace.back().to));
        }
    }
    result.explored_controls = product.num_controls();
    result.languages = std::move(languages);
    return result;
}

CheckResult check(const ParamInstance& inst, const CheckOptions& options) {
    inst.validate();
    ReadAlphabet r = ReadAlphabet::intern(inst);
    auto languages = build_read_languages(inst, r, options);
    return check_product(inst, r, std::move(languages), options.saturation);
}

}  // namespace napds
