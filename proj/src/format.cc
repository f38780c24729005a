#include "napds/format.hh"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "napds/errors.hh"

namespace napds {

namespace {

struct Token {
    std::string text;
    std::size_t col;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
    if (auto hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), i + 1});
        i = j;
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ParamInstance run() {
        std::size_t pos = 0;
        while (pos <= text_.size()) {
            std::size_t end = text_.find('\n', pos);
            if (end == std::string_view::npos)
                end = text_.size();
            ++line_;
            line_tokens(tokenize(text_.substr(pos, end - pos)));
            pos = end + 1;
        }
        if (current_)
            fail(1, "process block is not closed with 'end'");
        if (!seen_master_)
            fail(1, "missing 'process master' block");
        if (!seen_slave_)
            fail(1, "missing 'process slave' block");
        if (inst_.variables.empty())
            fail(1, "at least one 'var' declaration is required");
        inst_.validate();
        return std::move(inst_);
    }

private:
    [[noreturn]] void fail(std::size_t col, const std::string& msg) const {
        throw InputError("line " + std::to_string(line_) + ":" + std::to_string(col) + ": " + msg);
    }

    void line_tokens(const std::vector<Token>& t) {
        if (t.empty())
            return;
        const std::string& kw = t[0].text;
        if (kw == "var")
            return parse_var(t);
        if (kw == "process")
            return open_process(t);
        if (kw == "end") {
            if (!current_)
                fail(t[0].col, "'end' outside a process block");
            if (t.size() > 1)
                fail(t[1].col, "unexpected token after 'end'");
            if (!has_initial_)
                fail(t[0].col, std::string(is_master_ ? "master" : "slave") + " has no 'initial:' control");
            if (is_master_ && !has_target_)
                fail(t[0].col, "master has no 'target:' control");
            current_ = nullptr;
            return;
        }
        if (!current_)
            fail(t[0].col, "expected 'var' or 'process', found '" + kw + "'");
        if (kw == "controls:") {
            for (std::size_t i = 1; i < t.size(); ++i)
                control(t[i]);
        } else if (kw == "stack:") {
            for (std::size_t i = 1; i < t.size(); ++i) {
                const std::string& s = t[i].text;
                if (s == "$")
                    continue;
                if (s == "eps" || s == "->" || s == "read" || s == "write")
                    fail(t[i].col, "'" + s + "' is reserved and cannot be a stack symbol");
                SymbolId id = inst_.symbols->intern(s);
                if (std::find(current_->stack_alphabet.begin(), current_->stack_alphabet.end(), id) ==
                    current_->stack_alphabet.end())
                    current_->stack_alphabet.push_back(id);
            }
        } else if (kw == "initial:") {
            expect_count(t, 2);
            current_->initial = control(t[1]);
            has_initial_ = true;
        } else if (kw == "target:") {
            if (!is_master_)
                fail(t[0].col,
                     "targets must be master controls; to ask whether a slave reaches q, let it write "
                     "a fresh value on entering q and give the master a rule reading that value");
            expect_count(t, 2);
            inst_.target = control(t[1]);
            has_target_ = true;
        } else if (kw == "rule") {
            parse_rule(t);
        } else {
            fail(t[0].col, "unknown directive '" + kw + "'");
        }
    }

    void expect_count(const std::vector<Token>& t, std::size_t n) const {
        if (t.size() < n)
            fail(t.back().col, "'" + t[0].text + "' needs an argument");
        if (t.size() > n)
            fail(t[n].col, "unexpected token '" + t[n].text + "'");
    }

    void parse_var(const std::vector<Token>& t) {
        if (current_)
            fail(t[0].col, "'var' inside a process block");
        // var NAME : v1 ... init v   (the colon may be glued to the name)
        std::vector<Token> rest(t.begin() + 1, t.end());
        if (!rest.empty() && rest[0].text.size() > 1 && rest[0].text.back() == ':') {
            rest[0].text.pop_back();
            rest.insert(rest.begin() + 1, {":", rest[0].col + rest[0].text.size()});
        }
        if (rest.size() < 2 || rest[1].text != ":")
            fail(rest.empty() ? t[0].col : rest[0].col, "expected 'var <name> : <values> init <value>'");
        Variable v;
        v.name = rest[0].text;
        for (const auto& other : inst_.variables)
            if (other.name == v.name)
                fail(rest[0].col, "variable '" + v.name + "' declared twice");
        // the keyword is the second last token, so "init" may also be a value
        std::size_t end = rest.size() >= 4 && rest[rest.size() - 2].text == "init" ? rest.size() - 2 : rest.size();
        if (end == rest.size())
            for (std::size_t j = 2; j < rest.size(); ++j)
                if (rest[j].text == "init") {
                    end = j;
                    break;
                }
        std::size_t i = 2;
        for (; i < end; ++i) {
            if (std::find(v.values.begin(), v.values.end(), rest[i].text) != v.values.end())
                fail(rest[i].col, "value '" + rest[i].text + "' listed twice");
            v.values.push_back(rest[i].text);
        }
        if (v.values.empty())
            fail(t[0].col, "variable '" + v.name + "' has no values");
        if (i + 2 != rest.size())
            fail(i < rest.size() ? rest[i].col : t.back().col, "expected 'init <value>' at the end");
        auto it = std::find(v.values.begin(), v.values.end(), rest[i + 1].text);
        if (it == v.values.end())
            fail(rest[i + 1].col, "initial value '" + rest[i + 1].text + "' is not among the values");
        v.initial = static_cast<ValueId>(it - v.values.begin());
        inst_.variables.push_back(std::move(v));
    }

    void open_process(const std::vector<Token>& t) {
        if (current_)
            fail(t[0].col, "nested process block (missing 'end')");
        if (t.size() != 2 || (t[1].text != "master" && t[1].text != "slave"))
            fail(t[0].col, "expected 'process master' or 'process slave'");
        is_master_ = t[1].text == "master";
        bool& seen = is_master_ ? seen_master_ : seen_slave_;
        if (seen)
            fail(t[1].col, "second " + t[1].text + " block");
        seen = true;
        current_ = is_master_ ? &inst_.master : &inst_.slave;
        current_->stack_alphabet = {kBottom};
        has_initial_ = has_target_ = false;
    }

    ControlId control(const Token& t) {
        if (auto c = current_->find_control(t.text))
            return *c;
        return current_->add_control(t.text);
    }

    SymbolId stack_symbol(const Token& t) const {
        if (t.text == "$")
            return kBottom;
        auto id = inst_.symbols->lookup(t.text);
        if (!id || std::find(current_->stack_alphabet.begin(), current_->stack_alphabet.end(), *id) ==
                       current_->stack_alphabet.end())
            fail(t.col, "undeclared stack symbol '" + t.text + "' (list it on a 'stack:' line before the rules)");
        return *id;
    }

    void parse_rule(const std::vector<Token>& t) {
        // rule q a -> q' w... [read|write var=value]
        if (t.size() < 5 || t[3].text != "->")
            fail(t[0].col, "expected 'rule <q> <a> -> <q'> <w> [read|write <var>=<value>]'");
        NaRule r;
        r.from = control(t[1]);
        r.top = stack_symbol(t[2]);
        r.to = control(t[4]);
        std::size_t i = 5;
        std::size_t push_col = i < t.size() ? t[i].col : t[4].col;
        for (; i < t.size() && t[i].text != "read" && t[i].text != "write"; ++i) {
            if (t[i].text == "eps") {
                if (t.size() > i + 1 && t[i + 1].text != "read" && t[i + 1].text != "write")
                    fail(t[i + 1].col, "'eps' must be the whole pushed word");
                if (!r.push.empty())
                    fail(t[i].col, "'eps' must be the whole pushed word");
                continue;
            }
            r.push.push_back(stack_symbol(t[i]));
        }
        if (i == 5 && (i >= t.size() || t[i].text != "eps"))
            fail(push_col, "missing pushed word (write 'eps' for none)");
        if (i < t.size()) {
            if (i + 2 != t.size())
                fail(t[i].col, "expected '" + t[i].text + " <var>=<value>' to end the rule");
            r.action = action(t[i], t[i + 1]);
        }
        if (!respects_bottom_discipline(r.top, r.push))
            fail(push_col, r.top == kBottom
                               ? "with $ on top the pushed word must end in $ and contain no other $ "
                                 "(the bottom symbol is neither pushed nor popped)"
                               : "the pushed word may not contain $ (the bottom symbol is neither "
                                 "pushed nor popped)");
        current_->add_rule(std::move(r));
    }

    Action action(const Token& kind, const Token& arg) const {
        const auto eq = arg.text.find('=');
        if (eq == std::string::npos)
            fail(arg.col, "expected <var>=<value>");
        const std::string var = arg.text.substr(0, eq);
        const std::string value = arg.text.substr(eq + 1);
        auto vit = std::find_if(inst_.variables.begin(), inst_.variables.end(),
                                [&](const Variable& v) { return v.name == var; });
        if (vit == inst_.variables.end())
            fail(arg.col, "undeclared variable '" + var + "'");
        auto git = std::find(vit->values.begin(), vit->values.end(), value);
        if (git == vit->values.end())
            fail(arg.col + eq + 1, "variable '" + var + "' has no value '" + value + "'");
        const auto v = static_cast<VarId>(vit - inst_.variables.begin());
        const auto g = static_cast<ValueId>(git - vit->values.begin());
        return kind.text == "read" ? Action::read(v, g) : Action::write(v, g);
    }

    std::string_view text_;
    std::size_t line_ = 0;
    ParamInstance inst_;
    NaPds* current_ = nullptr;
    bool is_master_ = false, seen_master_ = false, seen_slave_ = false;
    bool has_initial_ = false, has_target_ = false;
};

void print_process(std::ostringstream& out, const ParamInstance& inst, const NaPds& p, bool master) {
    const SymbolTable& sym = *inst.symbols;
    out << "process " << (master ? "master" : "slave") << "\n";
    out << "  controls:";
    for (const auto& c : p.controls)
        out << " " << c;
    out << "\n  stack:";
    for (SymbolId s : p.stack_alphabet)
        if (s != kBottom)
            out << " " << sym.name(s);
    out << "\n  initial: " << p.controls[p.initial] << "\n";
    if (master)
        out << "  target: " << p.controls[inst.target] << "\n";
    for (const NaRule& r : p.rules) {
        out << "  rule " << p.controls[r.from] << " " << sym.name(r.top) << " -> " << p.controls[r.to] << " "
            << (r.push.empty() ? "eps" : sym.format(r.push));
        if (r.action.kind != ActionKind::internal) {
            const Variable& v = inst.variables[r.action.var];
            out << (r.action.kind == ActionKind::read ? " read " : " write ") << v.name << "="
                << v.values[r.action.value];
        }
        out << "\n";
    }
    out << "end\n";
}

}  // namespace

ParamInstance parse_instance(std::string_view text) {
    return Parser(text).run();
}

std::string print_instance(const ParamInstance& inst) {
    std::ostringstream out;
    for (const Variable& v : inst.variables) {
        out << "var " << v.name << " :";
        for (const auto& g : v.values)
            out << " " << g;
        out << " init " << v.values[v.initial] << "\n";
    }
    out << "\n";
    print_process(out, inst, inst.master, true);
    out << "\n";
    print_process(out, inst, inst.slave, false);
    return out.str();
}

Trace parse_trace(std::string_view text) {
    Trace trace;
    std::size_t line = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++line;
        auto t = tokenize(text.substr(pos, end - pos));
        pos = end + 1;
        if (t.empty())
            continue;
        auto number = [&](const Token& tok) {
            std::uint32_t v = 0;
            auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
            if (ec != std::errc() || p != tok.text.data() + tok.text.size())
                throw InputError("line " + std::to_string(line) + ":" + std::to_string(tok.col) +
                                 ": expected a non-negative integer, found '" + tok.text + "'");
            return v;
        };
        if (t.size() != 2)
            throw InputError("line " + std::to_string(line) + ":1: expected '<process> <rule>'");
        trace.push_back({number(t[0]), number(t[1])});
    }
    return trace;
}

std::string print_trace(const Trace& trace) {
    std::ostringstream out;
    for (const TraceStep& s : trace)
        out << s.process << " " << s.rule << "\n";
    return out.str();
}

}  // namespace napds
