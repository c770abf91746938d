#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nusys/checked.hpp"
#include "nusys/macro_scheme.hpp"
#include "nusys/measures.hpp"
#include "nusys/symbols.hpp"

namespace nusys {

struct MsTerminal {
    char symbol = 0;
    friend bool operator==(const MsTerminal&, const MsTerminal&) = default;
};

struct MsVariable {
    SymbolId var = 0;
    friend bool operator==(const MsVariable&, const MsVariable&) = default;
};

// var[first, last], 1-based and inclusive.
struct MsExtraction {
    SymbolId var = 0;
    Length first = 1;
    Length last = 1;
    friend bool operator==(const MsExtraction&, const MsExtraction&) = default;
};

using MsSymbol = std::variant<MsTerminal, MsVariable, MsExtraction>;
using MsRule = std::vector<MsSymbol>;

// One rule per variable (rules[id] for variable id). Only the start variable
// may have an empty rule; extractions need first <= last. Lengths and cycles
// are checked by solve_lengths() and expand().
class MacroSystem {
public:
    MacroSystem(std::string terminals, SymbolTable variables, std::vector<MsRule> rules, SymbolId start);

    const std::string& terminals() const noexcept { return terminals_; }
    const SymbolTable& variables() const noexcept { return variables_; }
    const std::vector<MsRule>& rules() const noexcept { return rules_; }
    const MsRule& rule(SymbolId v) const { return rules_.at(v); }
    SymbolId start() const noexcept { return start_; }

    friend bool operator==(const MacroSystem&, const MacroSystem&) = default;

private:
    std::string terminals_;
    SymbolTable variables_;
    std::vector<MsRule> rules_;
    SymbolId start_ = 0;
};

std::uint64_t size(const MacroSystem& m);

// |exp(A)| per variable id. Throws ValidityError on a length loop or an
// extraction past the end of its variable, OverflowError past 2^63-1.
std::vector<Length> solve_lengths(const MacroSystem& m);

// exp(start). Throws CycleError when some A[r] has no unique solution.
Text expand(const MacroSystem& m);
Text expand_variable(const MacroSystem& m, SymbolId v);

// Every variable's expansion occurs in w.
bool is_internal(const MacroSystem& m, std::string_view w);
inline bool is_internal(const MacroSystem& m) { return is_internal(m, expand(m)); }

// Single rule S with a terminal per literal phrase and an S-extraction per copy.
MacroSystem from_bms(const Bms& scheme);

// Single-rule normalization by leftmost occurrences, then phrase mapping.
// A copy phrase that lands on a cycle of sources is replaced by the slice of
// the rule it came from, until the scheme validates. Throws ValidityError when
// m is not internal.
Bms to_bms(const MacroSystem& m);

// Text format:
//   macrosystem
//   terminals: a b
//   start: S
//   A -> a b
//   S -> A S[1,4]
MacroSystem parse_macro_system(std::string_view text);
std::string to_text(const MacroSystem& m);

}  // namespace nusys
