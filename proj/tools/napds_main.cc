// napds: command-line front end.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "napds/cfg.hh"
#include "napds/er.hh"
#include "napds/errors.hh"
#include "napds/format.hh"
#include "napds/generate.hh"
#include "napds/oracle.hh"
#include "napds/product.hh"
#include "napds/witness.hh"

using namespace napds;

namespace {

enum Exit { kVerdict = 0, kInternal = 1, kInput = 2, kResource = 3 };

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ParamInstance load_instance(const std::string& path) {
    try {
        return parse_instance(slurp(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct Caps {
    std::size_t max_types = kDefaultMarkedCap;
    std::size_t max_states = kDefaultErStates;
    std::size_t max_antichain = kDefaultAntichainCap;
    std::string engine = "closure";

    void add_to(CLI::App* cmd, bool with_engine) {
        if (with_engine)
            cmd->add_option("--engine", engine, "read-language engine")
                ->check(CLI::IsMember({"closure", "er"}));
        cmd->add_option("--max-types", max_types, "cap on the marked alphabet of the er engine");
        cmd->add_option("--max-states", max_states, "cap on er automaton states");
        cmd->add_option("--max-antichain", max_antichain, "cap on minimal read-word antichains");
    }

    CheckOptions options() const {
        CheckOptions o;
        o.engine = engine == "er" ? Engine::er : Engine::closure;
        o.max_antichain = max_antichain;
        o.er.max_marked = max_types;
        o.er.max_states = max_states;
        return o;
    }
};

void print_witness(const ParamInstance& inst, const Witness& w) {
    std::cout << "# witness: " << w.n << " slave cop" << (w.n == 1 ? "y" : "ies")
              << "; process 0 is the master\n";
    for (std::size_t i = 0; i < w.trace.size(); ++i) {
        const TraceStep& s = w.trace[i];
        const NaPds& p = s.process == 0 ? inst.master : inst.slave;
        const NaRule& r = p.rules[s.rule];
        std::cout << s.process << " " << s.rule << "  # " << p.controls[r.from] << " -> " << p.controls[r.to];
        if (r.action.kind != ActionKind::internal)
            std::cout << " " << action_name(inst, r.action);
        if (w.realises_kill[i])
            std::cout << " (KILL_" << inst.variables[r.action.var].name << " in the product)";
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Parameterised reachability for non-atomic pushdown networks"};
    app.require_subcommand(1);

    std::string file, second;
    bool witness = false, sequential = false;
    Caps caps;
    auto* check_cmd = app.add_subcommand("check", "decide parameterised reachability");
    check_cmd->add_option("instance", file, "instance file")->required();
    check_cmd->add_flag("--witness", witness, "print a concrete run");
    check_cmd->add_flag("--sequential", sequential, "build read languages one at a time");
    caps.add_to(check_cmd, true);

    SimulateOptions sim;
    auto* sim_cmd = app.add_subcommand("simulate", "bounded explicit-state search for fixed n");
    sim_cmd->add_option("instance", file, "instance file")->required();
    sim_cmd->add_option("-n", sim.n, "number of slave copies");
    sim_cmd->add_option("--depth", sim.depth, "step bound");
    sim_cmd->add_option("--stack-bound", sim.stack_bound, "per-process stack bound");
    sim_cmd->add_option("--max-configs", sim.max_configs, "configuration cap");

    std::string var_name, value_name;
    auto* rl_cmd = app.add_subcommand("readlang", "print read-language automata as DOT");
    rl_cmd->add_option("instance", file, "instance file")->required();
    rl_cmd->add_option("--var", var_name, "restrict to one variable");
    rl_cmd->add_option("--value", value_name, "restrict to one value");
    caps.add_to(rl_cmd, true);

    auto* er_cmd = app.add_subcommand("er", "grammar to automaton via spine types");
    er_cmd->add_option("grammar", file, "grammar file")->required();
    caps.add_to(er_cmd, false);

    auto* gen_cmd = app.add_subcommand("gen", "instance from two grammars (intersection shape)");
    gen_cmd->add_option("left", file, "grammar written by the writer role")->required();
    gen_cmd->add_option("right", second, "grammar read by the reader role")->required();

    std::uint32_t replay_n = 0;
    auto* replay_cmd = app.add_subcommand("replay", "validate a trace");
    replay_cmd->add_option("instance", file, "instance file")->required();
    replay_cmd->add_option("trace", second, "trace file")->required();
    replay_cmd->add_option("-n", replay_n, "number of slave copies")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kVerdict : kInput;
    }

    if (*check_cmd) {
        ParamInstance inst = load_instance(file);
        CheckOptions options = caps.options();
        options.parallel = !sequential;
        CheckResult result = check(inst, options);
        std::cout << (result.reachable ? "REACHABLE" : "UNREACHABLE") << "\n";
        if (result.reachable && witness)
            print_witness(inst, reconstruct_witness(inst, result));
    } else if (*sim_cmd) {
        ParamInstance inst = load_instance(file);
        SimResult r = simulate(inst, sim);
        switch (r.verdict) {
        case SimVerdict::reached:
            std::cout << "REACHED\n" << print_trace(r.trace);
            break;
        case SimVerdict::not_reached:
            std::cout << "NOT-REACHED-WITHIN-BOUND\n";
            if (r.exhausted())
                std::cout << "# search space exhausted: no run with n = " << sim.n << " reaches the target\n";
            break;
        case SimVerdict::inconclusive:
            std::cout << "INCONCLUSIVE\n";
            break;
        }
        std::cout << "# configurations explored: " << r.explored << "\n";
    } else if (*rl_cmd) {
        ParamInstance inst = load_instance(file);
        ReadAlphabet r = ReadAlphabet::intern(inst);
        CheckOptions options = caps.options();
        bool any = false;
        for (VarId v = 0; v < inst.variables.size(); ++v) {
            const Variable& var = inst.variables[v];
            if (!var_name.empty() && var.name != var_name)
                continue;
            for (ValueId g = 0; g < var.values.size(); ++g) {
                if (!value_name.empty() && var.values[g] != value_name)
                    continue;
                any = true;
                Nfa nfa = [&] {
                    if (options.engine == Engine::closure)
                        return read_language_nfa(inst, r, v, g, options.max_antichain).nfa;
                    return er_nfa(closure_grammar(write_language_cnf(build_write_pds(inst, r, v, g)), r.all()),
                                  options.er);
                }();
                std::cout << to_dot(nfa, *inst.symbols, "L_" + var.name + "_" + var.values[g]);
            }
        }
        if (!any)
            throw InputError("no (variable, value) pair matches the selection");
    } else if (*er_cmd) {
        SymbolTable symbols;
        Cfg g = cfg_to_cnf(parse_grammar(slurp(file), symbols));
        ErOptions options;
        options.max_marked = caps.max_types;
        options.max_states = caps.max_states;
        std::cout << to_dot(er_nfa(g, options), symbols, "er");
    } else if (*gen_cmd) {
        SymbolTable symbols;
        Cfg left = parse_grammar(slurp(file), symbols);
        Cfg right = parse_grammar(slurp(second), symbols);
        std::cout << print_instance(generate_intersection_instance(left, right, symbols));
    } else if (*replay_cmd) {
        ParamInstance inst = load_instance(file);
        std::cout << (replay(inst, replay_n, parse_trace(slurp(second))) ? "VALID" : "INVALID") << "\n";
    }
    return kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const PreconditionViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
