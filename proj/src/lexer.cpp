#include "nusys/detail/lexer.hpp"

#include <charconv>

#include "nusys/checked.hpp"

namespace nusys::detail {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

int hex_value(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

}  // namespace

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++number;
        const std::string_view raw = text.substr(pos, end - pos);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            if (is_space(raw[i])) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !is_space(raw[j]))
                ++j;
            line.tokens.push_back({raw.substr(i, j - i), i + 1});
            i = j;
        }
        if (!line.tokens.empty() && line.tokens.front().text.front() != '#')
            lines.push_back(std::move(line));
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return lines;
}

std::uint64_t parse_count(const Token& tok, std::size_t line, std::string_view what) {
    std::uint64_t value = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (tok.text.empty() || ec != std::errc() || ptr != last)
        throw ParseError(line, tok.column, "expected a non-negative integer for " + std::string(what) +
                                               ", got '" + std::string(tok.text) + "'");
    if (value > kMaxLength)
        throw OverflowError("line " + std::to_string(line) + ": " + std::string(what) + " exceeds 2^63-1");
    return value;
}

std::uint64_t parse_keyed_count(const Token& tok, std::size_t line, std::string_view key) {
    const std::string prefix = std::string(key) + "=";
    if (!tok.text.starts_with(prefix))
        throw ParseError(line, tok.column, "expected '" + prefix + "<count>', got '" + std::string(tok.text) + "'");
    Token value{tok.text.substr(prefix.size()), tok.column + prefix.size()};
    return parse_count(value, line, key);
}

bool is_field(const Line& line, std::string_view key) {
    const auto& head = line.tokens.front().text;
    return head.size() == key.size() + 1 && head.starts_with(key) && head.back() == ':';
}

void fail(const Line& line, const Token& tok, const std::string& what) {
    throw ParseError(line.number, tok.column, what);
}

void fail(const Line& line, const std::string& what) { throw ParseError(line.number, 0, what); }

ReferenceToken split_reference(const Token& tok, std::size_t line) {
    const auto t = tok.text;
    ReferenceToken ref;
    std::size_t cut = t.find_first_of("([");
    ref.name = t.substr(0, cut);
    if (cut == std::string_view::npos)
        return ref;
    if (ref.name.empty())
        throw ParseError(line, tok.column, "missing name before '" + std::string(1, t[cut]) + "'");
    auto number = [&](std::size_t from, std::size_t to, std::string_view what) {
        return parse_count(Token{t.substr(from, to - from), tok.column + from}, line, what);
    };
    if (t[cut] == '(') {
        const std::size_t close = t.find(')', cut);
        if (close == std::string_view::npos)
            throw ParseError(line, tok.column + cut, "unterminated '(' in '" + std::string(t) + "'");
        ref.level = number(cut + 1, close, "level");
        cut = close + 1;
        if (cut == t.size())
            return ref;
        if (t[cut] != '[')
            throw ParseError(line, tok.column + cut, "expected '[' after level in '" + std::string(t) + "'");
    }
    const std::size_t comma = t.find(',', cut);
    if (t.back() != ']' || comma == std::string_view::npos)
        throw ParseError(line, tok.column + cut, "expected '[i,j]' in '" + std::string(t) + "'");
    ref.first = number(cut + 1, comma, "extraction start");
    ref.last = number(comma + 1, t.size() - 1, "extraction end");
    return ref;
}

char parse_byte_symbol(const Token& tok, std::size_t line) {
    const auto t = tok.text;
    if (t.size() == 1 && t[0] != '\\')
        return t[0];
    if (t == "\\\\")
        return '\\';
    if (t.size() == 4 && t[0] == '\\' && t[1] == 'x') {
        const int hi = hex_value(t[2]);
        const int lo = hex_value(t[3]);
        if (hi >= 0 && lo >= 0)
            return static_cast<char>(hi * 16 + lo);
    }
    throw ParseError(line, tok.column, "expected a single-byte symbol, got '" + std::string(t) + "'");
}

std::string format_byte_symbol(char c) {
    const auto u = static_cast<unsigned char>(c);
    if (c == '\\')
        return "\\\\";
    if (u > 0x20 && u < 0x7f && c != '#')
        return std::string(1, c);
    static constexpr char digits[] = "0123456789abcdef";
    return std::string{'\\', 'x', digits[u >> 4], digits[u & 0xf]};
}

}  // namespace nusys::detail
