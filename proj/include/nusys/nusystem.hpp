#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nusys/checked.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/macro_system.hpp"
#include "nusys/measures.hpp"
#include "nusys/symbols.hpp"

namespace nusys {

struct NuVariable {
    SymbolId var = 0;
    friend bool operator==(const NuVariable&, const NuVariable&) = default;
};

// var(level)[first, last]: tau of positions first..last of var's level-`level`
// string, 1-based and inclusive.
struct NuExtraction {
    SymbolId var = 0;
    std::uint64_t level = 0;
    Length first = 1;
    Length last = 1;
    friend bool operator==(const NuExtraction&, const NuExtraction&) = default;
};

// var(level), the whole level. Only accepted as constructor input; the
// constructor rewrites it to var(level)[1, |var_level|].
struct NuLevel {
    SymbolId var = 0;
    std::uint64_t level = 0;
    friend bool operator==(const NuLevel&, const NuLevel&) = default;
};

using NuSymbol = std::variant<NuVariable, NuExtraction, NuLevel>;
using NuWord = std::vector<NuSymbol>;

// NU-system (V, R, axiom, tau, d, n).
//
// Levels: L_0 is the axiom and L_l replaces every symbol of L_{l-1} by one
// level of its expansion. A variable A expands to R(A). An extraction
// B(l')[i,j] first becomes the symbols tau(B_{l'}[i..j]); from then on those
// symbols expand like any other. So |B(l')[i,j]| is j-i+1 at the level where
// it appears and follows its extracted symbols afterwards. The output is the
// n-prefix of tau(L_d).
//
// The constructor checks references, extraction ranges against the level
// lengths (which may need extracted symbols resolved) and n <= |L_d|, so it
// can throw ValidityError, CycleError and OverflowError. Cycles that only
// show up while producing output are reported by expand().
class NUSystem {
public:
    NUSystem(SymbolTable variables, std::vector<NuWord> rules, NuWord axiom, std::vector<SymbolId> coding,
             std::uint64_t depth, std::optional<Length> length = std::nullopt);

    const SymbolTable& variables() const noexcept { return variables_; }
    const std::vector<NuWord>& rules() const noexcept { return rules_; }
    const NuWord& axiom() const noexcept { return axiom_; }
    const std::vector<SymbolId>& coding() const noexcept { return coding_; }
    std::uint64_t depth() const noexcept { return depth_; }
    Length length() const noexcept { return length_; }
    // Largest extraction level, 0 when there are none.
    std::uint64_t max_level() const noexcept { return max_level_; }

    friend bool operator==(const NUSystem&, const NUSystem&) = default;

private:
    SymbolTable variables_;
    std::vector<NuWord> rules_;
    NuWord axiom_;
    std::vector<SymbolId> coding_;
    std::uint64_t depth_ = 0;
    Length length_ = 0;
    std::uint64_t max_level_ = 0;
};

// |axiom| + sum of rule lengths.
std::uint64_t size(const NUSystem& n);

// rows[l][A] = |A_l| for l = 0..max(max_level, d), exact.
std::vector<std::vector<Length>> level_lengths(const NUSystem& n);

// Throws CycleError when some A(l)[r] depends on itself.
Text expand(const NUSystem& n);

// a -> a for every terminal, A'[j,k] -> A'(|V|)[j,k], axiom S, depth |V|.
NUSystem from_macro_system(const MacroSystem& m);
NUSystem from_lsystem(const LSystem& l);

// Output of a followed by output of b.
NUSystem concat(const NUSystem& a, const NUSystem& b);
// b's rules run for b.depth() levels starting from the output of a. Every
// coding image of a must be a variable of b (matched by name).
NUSystem compose(const NUSystem& a, const NUSystem& b);

// Text format: as lsystem, with header `nusystem` and rule tokens A, A(l)
// and A(l)[i,j].
NUSystem parse_nusystem(std::string_view text);
std::string to_text(const NUSystem& n);

}  // namespace nusys
