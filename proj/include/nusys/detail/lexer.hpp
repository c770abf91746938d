#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nusys/error.hpp"

namespace nusys::detail {

struct Token {
    std::string_view text;
    std::size_t column = 0;  // 1-based
};

struct Line {
    std::size_t number = 0;  // 1-based
    std::vector<Token> tokens;
};

// Splits on newlines and whitespace. Blank lines and lines whose first token
// starts with '#' are dropped.
std::vector<Line> tokenize(std::string_view text);

// Non-negative decimal integer, rejecting signs, garbage and values above 2^63-1.
std::uint64_t parse_count(const Token& tok, std::size_t line, std::string_view what);

// Value of "key=<count>"; throws when the key does not match.
std::uint64_t parse_keyed_count(const Token& tok, std::size_t line, std::string_view key);

// True when the first token is "<key>:".
bool is_field(const Line& line, std::string_view key);

[[noreturn]] void fail(const Line& line, const Token& tok, const std::string& what);
[[noreturn]] void fail(const Line& line, const std::string& what);

// `Name`, `Name[i,j]`, `Name(l)` or `Name(l)[i,j]` split into parts.
struct ReferenceToken {
    std::string_view name;
    std::optional<std::uint64_t> level;
    std::optional<std::uint64_t> first;
    std::optional<std::uint64_t> last;
};
ReferenceToken split_reference(const Token& tok, std::size_t line);

// One-byte symbol tokens: printable ASCII other than '\' as itself,
// anything else as \xHH (and '\' as \\).
char parse_byte_symbol(const Token& tok, std::size_t line);
std::string format_byte_symbol(char c);

}  // namespace nusys::detail
