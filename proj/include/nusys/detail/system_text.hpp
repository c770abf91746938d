#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nusys/detail/lexer.hpp"

namespace nusys::detail {

// Fields shared by the lsystem and nusystem formats. Tokens point into the
// text passed to parse_system_text, which must outlive the result.
struct SystemText {
    struct RuleLine {
        std::size_t line = 0;
        Token lhs;
        std::vector<Token> rhs;
    };
    struct CodingPair {
        std::size_t line = 0;
        Token from;
        Token to;
    };

    std::size_t header_line = 1;
    std::size_t axiom_line = 0;
    std::vector<Token> axiom;
    std::optional<std::uint64_t> depth;
    std::optional<std::uint64_t> length;
    std::vector<CodingPair> coding;
    std::vector<RuleLine> rules;
};

SystemText parse_system_text(std::string_view text, std::string_view header);

// Variable name from a token: \\ and \xHH decode to one byte, anything else
// must be a valid symbol name.
std::string symbol_name(const Token& tok, std::size_t line);
std::string format_symbol_name(const std::string& name);

}  // namespace nusys::detail
