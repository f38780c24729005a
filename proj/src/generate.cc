#include "napds/generate.hh"

#include <algorithm>

namespace napds {

ParamInstance generate_intersection_instance(const Cfg& left, const Cfg& right,
                                             const SymbolTable& symbols) {
    ParamInstance inst;
    SymbolTable& st = *inst.symbols;
    Variable var{"g", {"idle", "one", "two", "fin", "ack", "done"}, 0};
    const ValueId one = 1, two = 2, fin = 3, ack = 4, done = 5;
    std::vector<SymbolId> letters(left.terminals());
    letters.insert(letters.end(), right.terminals().begin(), right.terminals().end());
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    auto letter_value = [&](SymbolId t) {
        return static_cast<ValueId>(6 + (std::find(letters.begin(), letters.end(), t) - letters.begin()));
    };
    for (SymbolId t : letters)
        var.values.push_back("t_" + symbols.name(t));
    inst.variables.push_back(var);

    NaPds& m = inst.master;
    m.stack_alphabet = {kBottom};
    const ControlId m0 = m.add_control("m0"), m1 = m.add_control("m1");
    m.initial = m0;
    inst.target = m1;
    m.add_rule({m0, kBottom, Action::read(0, done), m1, {kBottom}});

    NaPds& s = inst.slave;
    s.stack_alphabet = {kBottom};
    std::vector<SymbolId> letter_syms;
    for (SymbolId t : letters) {
        letter_syms.push_back(st.intern("t_" + symbols.name(t)));
        s.stack_alphabet.push_back(letter_syms.back());
    }
    auto letter_sym = [&](SymbolId t) {
        return letter_syms[std::find(letters.begin(), letters.end(), t) - letters.begin()];
    };
    const ControlId s0 = s.add_control("s0");
    s.initial = s0;

    // Expands one grammar on the stack; each terminal on top triggers `emit`.
    auto simulate = [&](const Cfg& g, const std::string& tag, ControlId run, auto emit) {
        std::vector<SymbolId> nts;
        for (NontermId a = 0; a < g.num_nonterminals(); ++a) {
            nts.push_back(st.intern(tag + "." + g.nonterminal_name(a)));
            s.stack_alphabet.push_back(nts.back());
        }
        for (const Production& p : g.productions()) {
            Word push;
            for (const GSymbol& x : p.body)
                push.push_back(x.terminal ? letter_sym(x.id) : nts[x.id]);
            s.add_rule({run, nts[p.head], Action::internal(), run, push});
        }
        for (SymbolId t : g.terminals())
            emit(t);
        return nts[g.start()];
    };

    // writer: w(one) r(two) (w(a) r(ack))* w(fin)
    {
        const ControlId c1 = s.add_control("w0"), c2 = s.add_control("w1"), run = s.add_control("wrun"),
                        wait = s.add_control("wwait"), end = s.add_control("wend");
        SymbolId start = simulate(left, "L", run, [&](SymbolId t) {
            s.add_rule({run, letter_sym(t), Action::write(0, letter_value(t)), wait, {}});
        });
        s.add_rule({s0, kBottom, Action::internal(), c1, {kBottom}});
        s.add_rule({c1, kBottom, Action::write(0, one), c2, {kBottom}});
        s.add_rule({c2, kBottom, Action::read(0, two), run, {start, kBottom}});
        for (SymbolId x : s.stack_alphabet)
            s.add_rule({wait, x, Action::read(0, ack), run, {x}});
        s.add_rule({run, kBottom, Action::write(0, fin), end, {kBottom}});
    }
    // reader: r(one) w(two) (r(a) w(ack))* r(fin) w(done)
    {
        const ControlId c1 = s.add_control("r0"), c2 = s.add_control("r1"), run = s.add_control("rrun"),
                        reply = s.add_control("rack"), qf = s.add_control("qf"), end = s.add_control("rend");
        SymbolId start = simulate(right, "R", run, [&](SymbolId t) {
            s.add_rule({run, letter_sym(t), Action::read(0, letter_value(t)), reply, {}});
        });
        s.add_rule({s0, kBottom, Action::internal(), c1, {kBottom}});
        s.add_rule({c1, kBottom, Action::read(0, one), c2, {kBottom}});
        s.add_rule({c2, kBottom, Action::write(0, two), run, {start, kBottom}});
        for (SymbolId x : s.stack_alphabet)
            s.add_rule({reply, x, Action::write(0, ack), run, {x}});
        s.add_rule({run, kBottom, Action::read(0, fin), qf, {kBottom}});
        s.add_rule({qf, kBottom, Action::write(0, done), end, {kBottom}});
    }
    inst.validate();
    return inst;
}

}  // namespace napds
