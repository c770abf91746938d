#include "nusys/grammar.hpp"

#include <algorithm>
#include <unordered_map>

#include "nusys/detail/lexer.hpp"
#include "nusys/error.hpp"
#include "nusys/symbols.hpp"

namespace nusys {

Grammar::Grammar(std::string terminals, std::vector<GrammarRule> rules)
    : terminals_(std::move(terminals)), rules_(std::move(rules)) {
    if (rules_.empty())
        throw ValidityError("grammar has no rules");
    bool declared[256] = {};
    for (char c : terminals_)
        declared[static_cast<unsigned char>(c)] = true;

    lengths_.reserve(rules_.size());
    for (std::size_t k = 0; k < rules_.size(); ++k) {
        const auto& rule = rules_[k];
        if (rule.rhs.empty())
            throw ValidityError("rule " + rule.name + " has an empty right-hand side");
        Length len = 0;
        for (const auto& sym : rule.rhs) {
            if (sym.terminal) {
                if (sym.id > 255 || !declared[sym.id])
                    throw ValidityError("rule " + rule.name + " uses an undeclared terminal");
                len = checked_add(len, 1, "expansion length");
            } else {
                if (sym.id >= k)
                    throw ValidityError("rule " + rule.name + " references a rule that is not listed before it");
                len = checked_add(len, lengths_[sym.id], "expansion length");
            }
        }
        lengths_.push_back(len);
    }
}

Text expand(const Grammar& g) {
    require_materializable(g.expansion_length(), "grammar expansion");
    Text out;
    out.reserve(g.expansion_length());
    struct Frame {
        std::uint32_t rule;
        std::size_t next;
    };
    std::vector<Frame> stack{{g.start(), 0}};
    while (!stack.empty()) {
        auto& top = stack.back();
        const auto& rhs = g.rules()[top.rule].rhs;
        if (top.next == rhs.size()) {
            stack.pop_back();
            continue;
        }
        const auto sym = rhs[top.next++];
        if (sym.terminal)
            out.push_back(static_cast<char>(sym.id));
        else
            stack.push_back({sym.id, 0});
    }
    return out;
}

std::uint64_t size(const Grammar& g) {
    std::uint64_t total = 0;
    for (const auto& r : g.rules())
        total += r.rhs.size();
    return total;
}

std::uint64_t height(const Grammar& g) {
    std::vector<std::uint64_t> h(g.rules().size(), 0);
    for (std::size_t k = 0; k < g.rules().size(); ++k) {
        std::uint64_t below = 0;
        for (const auto& sym : g.rules()[k].rhs)
            if (!sym.terminal)
                below = std::max(below, h[sym.id]);
        h[k] = below + 1;
    }
    return h.back();
}

Grammar parse_grammar(std::string_view text) {
    const auto lines = detail::tokenize(text);
    if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().tokens.front().text != "grammar")
        throw ParseError(lines.empty() ? 1 : lines.front().number, 1, "expected header 'grammar'");

    std::string terminals;
    bool seen_terminals = false;
    std::vector<GrammarRule> rules;
    std::unordered_map<std::string, std::uint32_t> index;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        if (detail::is_field(line, "terminals")) {
            if (seen_terminals || !rules.empty())
                detail::fail(line, "'terminals:' must appear once, before the rules");
            seen_terminals = true;
            for (std::size_t t = 1; t < line.tokens.size(); ++t) {
                const char c = detail::parse_byte_symbol(line.tokens[t], line.number);
                if (terminals.find(c) != std::string::npos)
                    detail::fail(line, line.tokens[t], "duplicate terminal");
                terminals.push_back(c);
            }
            continue;
        }
        if (!seen_terminals)
            detail::fail(line, "expected 'terminals:' before the rules");
        if (line.tokens.size() < 3 || line.tokens[1].text != "->")
            detail::fail(line, "expected '<name> -> <symbols>'");
        const auto& lhs = line.tokens.front();
        std::string name(lhs.text);
        if (!is_valid_symbol_name(name))
            detail::fail(line, lhs, "invalid nonterminal name '" + name + "'");
        if (name.size() == 1 && terminals.find(name[0]) != std::string::npos)
            detail::fail(line, lhs, "nonterminal '" + name + "' is also a terminal");
        if (index.count(name))
            detail::fail(line, lhs, "nonterminal '" + name + "' defined twice");

        GrammarRule rule{name, {}};
        for (std::size_t t = 2; t < line.tokens.size(); ++t) {
            const auto& tok = line.tokens[t];
            if (auto it = index.find(std::string(tok.text)); it != index.end()) {
                rule.rhs.push_back(GrammarSymbol::rule(it->second));
                continue;
            }
            const char c = detail::parse_byte_symbol(tok, line.number);
            if (terminals.find(c) == std::string::npos)
                detail::fail(line, tok, "'" + std::string(tok.text) +
                                            "' is neither a terminal nor an earlier nonterminal (forward reference?)");
            rule.rhs.push_back(GrammarSymbol::term(c));
        }
        index.emplace(name, static_cast<std::uint32_t>(rules.size()));
        rules.push_back(std::move(rule));
    }
    if (rules.empty())
        throw ParseError(lines.back().number, 0, "grammar has no rules");
    return Grammar(std::move(terminals), std::move(rules));
}

std::string to_text(const Grammar& g) {
    std::string out = "grammar\nterminals:";
    for (char c : g.terminals())
        out += " " + detail::format_byte_symbol(c);
    out += "\n";
    for (const auto& rule : g.rules()) {
        out += rule.name + " ->";
        for (const auto& sym : rule.rhs)
            out += " " + (sym.terminal ? detail::format_byte_symbol(static_cast<char>(sym.id))
                                       : g.rules()[sym.id].name);
        out += "\n";
    }
    return out;
}

}  // namespace nusys
