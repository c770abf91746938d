#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nusys/checked.hpp"
#include "nusys/grammar.hpp"
#include "nusys/measures.hpp"
#include "nusys/symbols.hpp"

namespace nusys {

using Word = std::vector<SymbolId>;

// |A|_l for 0 <= l <= depth, saturated at `cap`. Rows are stored until they
// stop changing; later levels reuse the last stored row.
class LevelLengths {
public:
    LevelLengths(const std::vector<Word>& rules, std::uint64_t depth, Length cap);

    Length at(SymbolId a, std::uint64_t level) const;
    Length of(const Word& w, std::uint64_t level) const;
    Length cap() const noexcept { return cap_; }

private:
    std::vector<std::vector<Length>> rows_;
    Length cap_;
};

// CD0L system (V, R, axiom, tau, d, n). Rules are indexed by symbol id and
// non-empty; the axiom is non-empty; tau maps V to V. The generated string is
// the n-prefix of tau(L_d); every emitted tau-image must have a one-byte name.
class LSystem {
public:
    // n defaults to |L_d|. Throws ValidityError when n > |L_d|, OverflowError
    // when n is omitted and |L_d| exceeds 2^63-1.
    LSystem(SymbolTable variables, std::vector<Word> rules, Word axiom, std::vector<SymbolId> coding,
            std::uint64_t depth, std::optional<Length> length = std::nullopt);

    const SymbolTable& variables() const noexcept { return variables_; }
    const std::vector<Word>& rules() const noexcept { return rules_; }
    const Word& axiom() const noexcept { return axiom_; }
    const std::vector<SymbolId>& coding() const noexcept { return coding_; }
    std::uint64_t depth() const noexcept { return depth_; }
    Length length() const noexcept { return length_; }

    friend bool operator==(const LSystem&, const LSystem&) = default;

private:
    SymbolTable variables_;
    std::vector<Word> rules_;
    Word axiom_;
    std::vector<SymbolId> coding_;
    std::uint64_t depth_ = 0;
    Length length_ = 0;
};

// |axiom| + sum of rule lengths.
std::uint64_t size(const LSystem& l);

// rows[l][A] = |A|_l for l = 0..d, saturated at n + 1.
std::vector<std::vector<Length>> level_lengths(const LSystem& l);

Text generate(const LSystem& l);

// Symbol reached from `a` by following first children for `levels` steps.
SymbolId first_symbol_after(const std::vector<Word>& rules, SymbolId a, std::uint64_t levels);

struct MorphismProfile {
    std::size_t depth = 0;  // alphabet size
    std::size_t width = 0;  // longest image
    std::uint64_t size = 0;
    bool expanding = false;
    bool non_erasing = false;
    std::optional<std::size_t> uniform_k;
    bool coding = false;
    std::vector<SymbolId> prolongable_on;

    friend bool operator==(const MorphismProfile&, const MorphismProfile&) = default;
};

MorphismProfile profile(const std::vector<Word>& rules);
inline MorphismProfile profile(const LSystem& l) { return profile(l.rules()); }

// Level-indexed grammar: A_i -> (B_1)_{i+1} ... for reachable (A, i), last
// level emitting tau-images, start S'. Expanding systems with d > ceil(lg n)
// are first rebased onto the first symbol of L_{d - ceil(lg n)}. When n <
// |L_d| the rules along the rightmost needed path are cut to the prefix, which
// adds at most one partial rule per level.
Grammar to_grammar(const LSystem& l);

// Variables are the nonterminals and the terminals used on right-hand sides,
// with a -> a for those terminals; axiom R(start), depth height - 1, identity
// coding.
LSystem from_grammar(const Grammar& g);

// delta-sep: 0 -> 001, 1 -> 1, axiom 0, n = 2^{d+1} - 1.
LSystem delta_sep_system(std::uint64_t depth);
// thue-morse: 0 -> 01, 1 -> 10, axiom 0, n = 2^d.
LSystem thue_morse_system(std::uint64_t depth);

struct MorphismSpec {
    std::map<std::string, std::vector<std::string>> rules;
    std::vector<std::string> axiom;
    std::map<std::string, std::string> coding;  // identity where absent
    std::uint64_t depth = 0;
    std::optional<Length> length;
};
LSystem custom_morphism_system(const MorphismSpec& spec);

// By name: "delta-sep", "thue-morse" (depth only) or "custom-morphism".
// Throws std::invalid_argument for other names.
LSystem make_family(std::string_view name, std::uint64_t depth, const MorphismSpec& custom = {});

// Text format:
//   lsystem
//   axiom: 0
//   depth: 13
//   length: 16383        (optional, defaults to |L_d|)
//   coding: 0->0 1->1    (optional, identity by default)
//   rule: 0 -> 0 0 1
//   rule: 1 -> 1
LSystem parse_lsystem(std::string_view text);
std::string to_text(const LSystem& l);

}  // namespace nusys
