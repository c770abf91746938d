#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nusys/checked.hpp"
#include "nusys/measures.hpp"

namespace nusys {

struct Literal {
    char symbol = 0;
    friend bool operator==(const Literal&, const Literal&) = default;
};

// w[p, p+length-1] = w[source, source+length-1], 1-based, length >= 2.
struct Copy {
    Length source = 0;
    Length length = 0;
    friend bool operator==(const Copy&, const Copy&) = default;
};

using Phrase = std::variant<Literal, Copy>;

inline Length phrase_length(const Phrase& p) {
    if (const auto* c = std::get_if<Copy>(&p))
        return c->length;
    return 1;
}

// A phrase sequence with its declared total length. The constructor checks
// the structural invariants (lengths add up, copies have length >= 2, sources
// stay inside [1,n]); whether the copies resolve is a separate question, see
// validate().
class BidirectionalMacroScheme {
public:
    BidirectionalMacroScheme() = default;
    BidirectionalMacroScheme(std::vector<Phrase> phrases, Length n);

    const std::vector<Phrase>& phrases() const noexcept { return phrases_; }
    Length length() const noexcept { return n_; }
    std::size_t size() const noexcept { return phrases_.size(); }

    friend bool operator==(const BidirectionalMacroScheme&, const BidirectionalMacroScheme&) = default;

private:
    std::vector<Phrase> phrases_;
    Length n_ = 0;
};

using Bms = BidirectionalMacroScheme;

// f(i) for i = 1..n at index i-1; empty for positions inside literal phrases.
// Inside copy phrase k starting at p_k, f(i) = s_k + (i - p_k).
std::vector<std::optional<Length>> position_map(const Bms& scheme);

// A position whose f-chain never reaches a literal, if any.
std::optional<Length> find_cycle(const Bms& scheme);

inline bool validate(const Bms& scheme) { return !find_cycle(scheme).has_value(); }

// Solves the phrase equations by memoized f-chain resolution.
// Throws CycleError naming an offending position.
Text decode(const Bms& scheme);

// The LZ76 parse read as a left-only scheme; length-1 copies become literals.
Bms from_lz(const LzParse& parse);

// Text format:
//   bms n=<N>
//   lit <symbol>
//   copy s=<pos> len=<L>
Bms parse_bms(std::string_view text);
std::string to_text(const Bms& scheme);

namespace detail {
// Structure-unchecked core shared with the brute-force search.
std::optional<Length> find_cycle(std::span<const Phrase> phrases, Length n);
}  // namespace detail

}  // namespace nusys
