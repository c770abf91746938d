#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nusys/checked.hpp"
#include "nusys/measures.hpp"

namespace nusys {

// A right-hand-side item: a terminal byte, or a reference to an earlier rule.
struct GrammarSymbol {
    bool terminal = true;
    std::uint32_t id = 0;  // byte value for terminals, rule index otherwise

    static GrammarSymbol term(char c) { return {true, static_cast<unsigned char>(c)}; }
    static GrammarSymbol rule(std::uint32_t index) { return {false, index}; }

    friend bool operator==(const GrammarSymbol&, const GrammarSymbol&) = default;
};

struct GrammarRule {
    std::string name;
    std::vector<GrammarSymbol> rhs;

    friend bool operator==(const GrammarRule&, const GrammarRule&) = default;
};

// Straight-line grammar: rule k may only reference terminals and rules
// 0..k-1, every right-hand side is non-empty, and the last rule is the start.
// The constructor rejects forward references and undeclared terminals.
class Grammar {
public:
    Grammar(std::string terminals, std::vector<GrammarRule> rules);

    const std::string& terminals() const noexcept { return terminals_; }
    const std::vector<GrammarRule>& rules() const noexcept { return rules_; }
    std::uint32_t start() const noexcept { return static_cast<std::uint32_t>(rules_.size() - 1); }

    // |exp(X_k)| for every rule, checked against 2^63-1.
    const std::vector<Length>& expansion_lengths() const noexcept { return lengths_; }
    Length expansion_length() const noexcept { return lengths_.back(); }

    friend bool operator==(const Grammar& a, const Grammar& b) {
        return a.terminals_ == b.terminals_ && a.rules_ == b.rules_;
    }

private:
    std::string terminals_;
    std::vector<GrammarRule> rules_;
    std::vector<Length> lengths_;
};

Text expand(const Grammar& g);

// Sum of right-hand-side lengths.
std::uint64_t size(const Grammar& g);

// Longest root-to-terminal path counted in rules: X -> a has height 1.
std::uint64_t height(const Grammar& g);

// Text format:
//   grammar
//   terminals: a b
//   X1 -> a b
//   X2 -> X1 X1 X1
Grammar parse_grammar(std::string_view text);
std::string to_text(const Grammar& g);

}  // namespace nusys
