#include "nusys/macro_system.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "nusys/detail/lexer.hpp"
#include "nusys/error.hpp"

namespace nusys {

MacroSystem::MacroSystem(std::string terminals, SymbolTable variables, std::vector<MsRule> rules, SymbolId start)
    : terminals_(std::move(terminals)), variables_(std::move(variables)), rules_(std::move(rules)), start_(start) {
    if (rules_.size() != variables_.size())
        throw ValidityError("macro system needs exactly one rule per variable");
    if (start_ >= variables_.size())
        throw ValidityError("start variable is not declared");
    bool declared[256] = {};
    for (char c : terminals_)
        declared[static_cast<unsigned char>(c)] = true;
    for (SymbolId v = 0; v < rules_.size(); ++v) {
        const auto& name = variables_.name(v);
        if (name.size() == 1 && declared[static_cast<unsigned char>(name[0])])
            throw ValidityError("variable '" + name + "' is also a terminal");
        if (rules_[v].empty() && v != start_)
            throw ValidityError("only the start variable may have an empty rule, not '" + name + "'");
        for (const auto& sym : rules_[v]) {
            if (const auto* t = std::get_if<MsTerminal>(&sym)) {
                if (!declared[static_cast<unsigned char>(t->symbol)])
                    throw ValidityError("rule " + name + " uses an undeclared terminal");
            } else if (const auto* x = std::get_if<MsVariable>(&sym)) {
                if (x->var >= rules_.size())
                    throw ValidityError("rule " + name + " references an unknown variable");
            } else {
                const auto& e = std::get<MsExtraction>(sym);
                if (e.var >= rules_.size())
                    throw ValidityError("rule " + name + " references an unknown variable");
                if (e.first == 0 || e.first > e.last)
                    throw ValidityError("rule " + name + " has an extraction with an empty or zero-based range");
            }
        }
    }
}

std::uint64_t size(const MacroSystem& m) {
    std::uint64_t total = 0;
    for (const auto& r : m.rules())
        total += r.size();
    return total;
}

std::vector<Length> solve_lengths(const MacroSystem& m) {
    const std::size_t nv = m.rules().size();
    enum class State : unsigned char { Fresh, Open, Done };
    std::vector<State> state(nv, State::Fresh);
    std::vector<Length> len(nv, 0);

    // Only plain variable occurrences create length dependencies.
    for (SymbolId root = 0; root < nv; ++root) {
        if (state[root] != State::Fresh)
            continue;
        std::vector<std::pair<SymbolId, std::size_t>> stack{{root, 0}};
        state[root] = State::Open;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& rule = m.rule(v);
            if (next == rule.size()) {
                Length total = 0;
                for (const auto& sym : rule) {
                    if (const auto* x = std::get_if<MsVariable>(&sym))
                        total = checked_add(total, len[x->var], "expansion length");
                    else if (const auto* e = std::get_if<MsExtraction>(&sym))
                        total = checked_add(total, e->last - e->first + 1, "expansion length");
                    else
                        total = checked_add(total, 1, "expansion length");
                }
                len[v] = total;
                state[v] = State::Done;
                stack.pop_back();
                continue;
            }
            const auto* x = std::get_if<MsVariable>(&rule[next++]);
            if (!x)
                continue;
            if (state[x->var] == State::Open)
                throw ValidityError("invalid macro system: the length of '" + m.variables().name(x->var) +
                                    "' depends on itself");
            if (state[x->var] == State::Fresh) {
                state[x->var] = State::Open;
                stack.push_back({x->var, 0});
            }
        }
    }

    for (SymbolId v = 0; v < nv; ++v)
        for (const auto& sym : m.rule(v))
            if (const auto* e = std::get_if<MsExtraction>(&sym); e && e->last > len[e->var])
                throw ValidityError("extraction " + m.variables().name(e->var) + "[" + std::to_string(e->first) + "," +
                                    std::to_string(e->last) + "] in rule " + m.variables().name(v) +
                                    " exceeds |exp(" + m.variables().name(e->var) + ")| = " +
                                    std::to_string(len[e->var]));
    return len;
}

namespace {

class Expander {
public:
    explicit Expander(const MacroSystem& m) : m_(m), len_(solve_lengths(m)), offsets_(m.rules().size()),
                                              memo_(m.rules().size()) {
        for (SymbolId v = 0; v < m.rules().size(); ++v) {
            auto& off = offsets_[v];
            off.reserve(m.rule(v).size() + 1);
            off.push_back(0);
            for (const auto& sym : m.rule(v))
                off.push_back(off.back() + symbol_length(sym));
        }
    }

    const std::vector<Length>& lengths() const noexcept { return len_; }

    Text emit(SymbolId root) {
        require_materializable(len_[root], "macro system expansion");
        Text out;
        out.reserve(len_[root]);
        std::vector<std::pair<SymbolId, std::size_t>> stack{{root, 0}};
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            const auto& rule = m_.rule(v);
            if (next == rule.size()) {
                stack.pop_back();
                continue;
            }
            const auto& sym = rule[next++];
            if (const auto* t = std::get_if<MsTerminal>(&sym)) {
                out.push_back(t->symbol);
            } else if (const auto* x = std::get_if<MsVariable>(&sym)) {
                stack.push_back({x->var, 0});
            } else {
                const auto& e = std::get<MsExtraction>(sym);
                for (Length r = e.first; r <= e.last; ++r)
                    out.push_back(resolve(e.var, r));
            }
        }
        return out;
    }

private:
    static constexpr int kOpen = -1;

    Length symbol_length(const MsSymbol& sym) const {
        if (const auto* x = std::get_if<MsVariable>(&sym))
            return len_[x->var];
        if (const auto* e = std::get_if<MsExtraction>(&sym))
            return e->last - e->first + 1;
        return 1;
    }

    // exp(v)[r] via the chain of covering children.
    char resolve(SymbolId v, Length r) {
        std::vector<std::pair<SymbolId, Length>> path;
        char result = 0;
        while (true) {
            auto& memo = memo_[v];
            if (auto it = memo.find(r); it != memo.end()) {
                if (it->second == kOpen)
                    throw CycleError("no unique solution: " + m_.variables().name(v) + "[" + std::to_string(r) +
                                     "] depends on itself");
                result = static_cast<char>(it->second);
                break;
            }
            memo.emplace(r, kOpen);
            path.emplace_back(v, r);
            const auto& off = offsets_[v];
            const std::size_t s = static_cast<std::size_t>(std::upper_bound(off.begin(), off.end(), r - 1) - off.begin()) - 1;
            const Length into = r - off[s];  // 1-based inside child s
            const auto& sym = m_.rule(v)[s];
            if (const auto* t = std::get_if<MsTerminal>(&sym)) {
                result = t->symbol;
                break;
            }
            if (const auto* x = std::get_if<MsVariable>(&sym)) {
                v = x->var;
                r = into;
            } else {
                const auto& e = std::get<MsExtraction>(sym);
                v = e.var;
                r = e.first + into - 1;
            }
        }
        for (const auto& [pv, pr] : path)
            memo_[pv][pr] = static_cast<unsigned char>(result);
        return result;
    }

    const MacroSystem& m_;
    std::vector<Length> len_;
    std::vector<std::vector<Length>> offsets_;
    std::vector<std::unordered_map<Length, int>> memo_;
};

}  // namespace

Text expand(const MacroSystem& m) { return expand_variable(m, m.start()); }

Text expand_variable(const MacroSystem& m, SymbolId v) {
    Expander ex(m);
    return ex.emit(v);
}

bool is_internal(const MacroSystem& m, std::string_view w) {
    Expander ex(m);
    for (SymbolId v = 0; v < m.rules().size(); ++v)
        if (w.find(ex.emit(v)) == std::string_view::npos)
            return false;
    return true;
}

MacroSystem from_bms(const Bms& scheme) {
    std::string terminals;
    MsRule rule;
    rule.reserve(scheme.size());
    for (const auto& p : scheme.phrases()) {
        if (const auto* lit = std::get_if<Literal>(&p)) {
            if (terminals.find(lit->symbol) == std::string::npos)
                terminals.push_back(lit->symbol);
            rule.push_back(MsTerminal{lit->symbol});
        } else {
            const auto& c = std::get<Copy>(p);
            rule.push_back(MsExtraction{0, c.source, c.source + c.length - 1});
        }
    }
    std::sort(terminals.begin(), terminals.end());
    SymbolTable vars;
    vars.intern("S");
    return MacroSystem(std::move(terminals), std::move(vars), {std::move(rule)}, 0);
}

Bms to_bms(const MacroSystem& m) {
    Expander ex(m);
    const auto& len = ex.lengths();
    const Text w = ex.emit(m.start());
    if (w.empty())
        return Bms({}, 0);

    std::vector<Length> occ(m.rules().size(), 0);  // 1-based leftmost occurrence
    for (SymbolId v = 0; v < m.rules().size(); ++v) {
        if (v == m.start()) {
            occ[v] = 1;
            continue;
        }
        const auto at = w.find(ex.emit(v));
        if (at == Text::npos)
            throw ValidityError("macro system is not internal: exp(" + m.variables().name(v) +
                                ") does not occur in exp(" + m.variables().name(m.start()) + ")");
        occ[v] = at + 1;
    }

    // Every copy phrase remembers which slice exp(var)[first, last] it stands
    // for, so it can be replaced by the matching slice of var's rule.
    struct Ref {
        SymbolId var;
        Length first, last;
    };
    struct Item {
        Phrase phrase;
        std::optional<Ref> ref;
    };
    auto slice = [&](SymbolId v, Length first, Length last) {
        if (first == last)
            return Item{Literal{w[occ[v] + first - 2]}, std::nullopt};
        return Item{Copy{occ[v] + first - 1, last - first + 1}, Ref{v, first, last}};
    };
    auto sym_length = [&](const MsSymbol& sym) -> Length {
        if (std::holds_alternative<MsTerminal>(sym))
            return 1;
        if (const auto* x = std::get_if<MsVariable>(&sym))
            return len[x->var];
        const auto& e = std::get<MsExtraction>(sym);
        return e.last - e.first + 1;
    };
    // Pieces of rule(v) covering exp(v)[first, last].
    auto inline_rule = [&](const Ref& r) {
        std::vector<Item> out;
        Length p = 1;
        for (const auto& sym : m.rule(r.var)) {
            const Length l = sym_length(sym);
            const Length lo = std::max(p, r.first), hi = std::min(p + l - 1, r.last);
            if (lo <= hi) {
                if (const auto* t = std::get_if<MsTerminal>(&sym))
                    out.push_back(Item{Literal{t->symbol}, std::nullopt});
                else if (const auto* x = std::get_if<MsVariable>(&sym))
                    out.push_back(slice(x->var, lo - p + 1, hi - p + 1));
                else {
                    const auto& e = std::get<MsExtraction>(sym);
                    out.push_back(slice(e.var, e.first + lo - p, e.first + hi - p));
                }
            }
            p += l;
        }
        return out;
    };

    std::vector<Item> items = inline_rule(Ref{m.start(), 1, w.size()});

    // A valid system resolves every position in finitely many steps, so the
    // repair terminates; the bound only guards against bugs.
    for (std::size_t round = 0;; ++round) {
        std::vector<Phrase> phrases;
        phrases.reserve(items.size());
        for (const auto& it : items)
            phrases.push_back(it.phrase);
        Bms scheme(std::move(phrases), w.size());
        const auto bad = find_cycle(scheme);
        if (!bad)
            return scheme;
        if (round > 4 * w.size() + size(m))
            throw ValidityError("cannot turn macro system into a valid scheme: repair did not converge at position " +
                                std::to_string(*bad));

        // Walk onto the cycle reached from the bad position and replace the
        // first phrase met there by the rule slice it stands for.
        std::vector<Length> start(items.size());
        Length p = 1;
        for (std::size_t k = 0; k < items.size(); ++k) {
            start[k] = p;
            p += phrase_length(items[k].phrase);
        }
        auto phrase_of = [&](Length pos) {
            return static_cast<std::size_t>(std::upper_bound(start.begin(), start.end(), pos) - start.begin()) - 1;
        };
        auto step = [&](Length pos) {
            const std::size_t k = phrase_of(pos);
            return std::get<Copy>(items[k].phrase).source + (pos - start[k]);
        };
        Length pos = *bad;
        for (std::size_t i = 0; i <= w.size(); ++i)
            pos = step(pos);
        const std::size_t target = phrase_of(pos);
        const auto inlined = inline_rule(*items[target].ref);
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(target));
        items.insert(items.begin() + static_cast<std::ptrdiff_t>(target), inlined.begin(), inlined.end());
    }
}

MacroSystem parse_macro_system(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().tokens.front().text != "macrosystem")
        throw ParseError(lines.empty() ? 1 : lines.front().number, 1, "expected header 'macrosystem'");

    std::string terminals;
    bool seen_terminals = false;
    std::optional<std::string> start_name;
    const detail::Token* start_tok = nullptr;
    std::size_t start_line = 0;
    std::vector<const detail::Line*> rule_lines;
    SymbolTable vars;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        if (detail::is_field(line, "terminals")) {
            if (seen_terminals)
                detail::fail(line, "duplicate 'terminals:' line");
            seen_terminals = true;
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
                const char c = detail::parse_byte_symbol(line.tokens[t], line.number);
                if (terminals.find(c) != std::string::npos)
                    detail::fail(line, line.tokens[t], "duplicate terminal");
                terminals.push_back(c);
            }
            continue;
        }
        if (detail::is_field(line, "start")) {
            if (start_name)
                detail::fail(line, "duplicate 'start:' line");
            if (line.tokens.size() != 2)
                detail::fail(line, "expected 'start: <variable>'");
            start_name = std::string(line.tokens[1].text);
            start_tok = &line.tokens[1];
            start_line = line.number;
            continue;
        }
        if (line.tokens.size() < 2 || line.tokens[1].text != "->")
            detail::fail(line, "expected '<variable> -> <symbols>'");
        const auto& lhs = line.tokens.front();
        if (!is_valid_symbol_name(lhs.text))
            detail::fail(line, lhs, "invalid variable name '" + std::string(lhs.text) + "'");
        if (vars.find(lhs.text))
            detail::fail(line, lhs, "variable '" + std::string(lhs.text) + "' defined twice");
        vars.intern(lhs.text);
        rule_lines.push_back(&line);
    }
    if (!seen_terminals)
        throw ParseError(lines.front().number, 0, "missing 'terminals:' line");
    if (!start_name)
        throw ParseError(lines.front().number, 0, "missing 'start:' line");
    const auto start = vars.find(*start_name);
    if (!start)
        throw ParseError(start_line, start_tok->column, "start variable '" + *start_name + "' has no rule");

    std::vector<MsRule> rules(vars.size());
    for (std::size_t k = 0; k < rule_lines.size(); ++k) {
        const auto& line = *rule_lines[k];
        const auto& name = vars.name(static_cast<SymbolId>(k));
        if (name.size() == 1 && terminals.find(name[0]) != std::string::npos)
            detail::fail(line, line.tokens[0], "variable '" + name + "' is also a terminal");
        if (line.tokens.size() == 2 && k != *start)
            detail::fail(line, "only the start variable may have an empty rule");
        auto& rule = rules[k];
        for (std::size_t t = 2; t < line.tokens.size(); ++t) {
            const auto& tok = line.tokens[t];
            const bool plain = tok.text.size() == 1 || tok.text.starts_with('\\');
            const auto ref = plain ? detail::ReferenceToken{tok.text, {}, {}, {}}
                                   : detail::split_reference(tok, line.number);
            if (ref.level)
                detail::fail(line, tok, "levels are not allowed in a macro system");
            if (ref.first) {
                const auto v = vars.find(ref.name);
                if (!v)
                    detail::fail(line, tok, "unknown variable '" + std::string(ref.name) + "'");
                if (*ref.first == 0 || *ref.first > *ref.last)
                    detail::fail(line, tok, "extraction range must satisfy 1 <= i <= j");
                rule.push_back(MsExtraction{*v, *ref.first, *ref.last});
                continue;
            }
            if (const auto v = vars.find(tok.text)) {
                rule.push_back(MsVariable{*v});
                continue;
            }
            const char c = detail::parse_byte_symbol(tok, line.number);
            if (terminals.find(c) == std::string::npos)
                detail::fail(line, tok, "'" + std::string(tok.text) + "' is neither a terminal nor a variable");
            rule.push_back(MsTerminal{c});
        }
    }
    return MacroSystem(std::move(terminals), std::move(vars), std::move(rules), *start);
}

std::string to_text(const MacroSystem& m) {
    std::string out = "macrosystem\nterminals:";
    for (char c : m.terminals())
        out += " " + detail::format_byte_symbol(c);
    out += "\nstart: " + m.variables().name(m.start()) + "\n";
    for (SymbolId v = 0; v < m.rules().size(); ++v) {
        out += m.variables().name(v) + " ->";
        for (const auto& sym : m.rule(v)) {
            out += " ";
            if (const auto* t = std::get_if<MsTerminal>(&sym))
                out += detail::format_byte_symbol(t->symbol);
            else if (const auto* x = std::get_if<MsVariable>(&sym))
                out += m.variables().name(x->var);
            else {
                const auto& e = std::get<MsExtraction>(sym);
                out += m.variables().name(e.var) + "[" + std::to_string(e.first) + "," + std::to_string(e.last) + "]";
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace nusys
