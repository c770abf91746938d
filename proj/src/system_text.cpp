#include "nusys/detail/system_text.hpp"

#include "nusys/symbols.hpp"

namespace nusys::detail {

SystemText parse_system_text(std::string_view text, std::string_view header) {
    const auto lines = tokenize(text);
    if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().tokens.front().text != header)
        throw ParseError(lines.empty() ? 1 : lines.front().number, 1, "expected header '" + std::string(header) + "'");

    SystemText out;
    out.header_line = lines.front().number;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& line = lines[li];
        const auto& toks = line.tokens;
        if (is_field(line, "axiom")) {
            if (out.axiom_line)
                fail(line, "duplicate 'axiom:' line");
            if (toks.size() < 2)
                fail(line, "the axiom must not be empty");
            out.axiom_line = line.number;
            out.axiom.assign(toks.begin() + 1, toks.end());
        } else if (is_field(line, "depth") || is_field(line, "length")) {
            const bool is_depth = is_field(line, "depth");
            auto& slot = is_depth ? out.depth : out.length;
            if (slot)
                fail(line, std::string("duplicate '") + (is_depth ? "depth" : "length") + ":' line");
            if (toks.size() != 2)
                fail(line, std::string("expected '") + (is_depth ? "depth" : "length") + ": <count>'");
            slot = parse_count(toks[1], line.number, is_depth ? "depth" : "length");
        } else if (is_field(line, "coding")) {
            for (std::size_t t = 1; t < toks.size(); ++t) {
                const auto tx = toks[t].text;
                const auto arrow = tx.find("->", 1);
                if (arrow == std::string_view::npos || arrow + 2 >= tx.size())
                    fail(line, toks[t], "expected '<from>-><to>' in coding, got '" + std::string(tx) + "'");
                out.coding.push_back({line.number, Token{tx.substr(0, arrow), toks[t].column},
                                      Token{tx.substr(arrow + 2), toks[t].column + arrow + 2}});
            }
        } else if (is_field(line, "rule")) {
            if (toks.size() < 4 || toks[2].text != "->")
                fail(line, "expected 'rule: <variable> -> <symbols>' with a non-empty right-hand side");
            out.rules.push_back({line.number, toks[1], {toks.begin() + 3, toks.end()}});
        } else {
            fail(line, line.tokens.front(), "unknown field '" + std::string(toks.front().text) + "'");
        }
    }
    if (!out.axiom_line)
        throw ParseError(out.header_line, 0, "missing 'axiom:' line");
    if (!out.depth)
        throw ParseError(out.header_line, 0, "missing 'depth:' line");
    if (out.rules.empty())
        throw ParseError(out.header_line, 0, "no 'rule:' lines");
    return out;
}

std::string symbol_name(const Token& tok, std::size_t line) {
    if (tok.text.starts_with('\\'))
        return std::string(1, parse_byte_symbol(tok, line));
    if (!is_valid_symbol_name(tok.text))
        throw ParseError(line, tok.column, "invalid symbol name '" + std::string(tok.text) + "'");
    return std::string(tok.text);
}

std::string format_symbol_name(const std::string& name) {
    if (name.size() != 1)
        return name;
    if (!is_valid_symbol_name(name))
        return "\\x" + std::string{"0123456789abcdef"[static_cast<unsigned char>(name[0]) >> 4],
                                    "0123456789abcdef"[name[0] & 0xf]};
    return format_byte_symbol(name[0]);
}

}  // namespace nusys::detail
