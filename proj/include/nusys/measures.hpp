#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nusys/rational.hpp"

namespace nusys {

// The subject string w[1,n]: one symbol per byte. The alphabet is whatever
// bytes occur.
using Text = std::string;

/// Number of distinct substrings of length k in w, 1 <= k <= n.
/// Karp-Rabin window hashing; colliding windows are compared byte by byte.
std::uint64_t string_complexity(std::string_view w, std::uint64_t k);

/// S_w(k) for every k at once: entry k-1 holds S_w(k). Built from the suffix
/// and LCP arrays in O(n log n).
std::vector<std::uint64_t> complexity_profile(std::string_view w);

// max over k of S_w(k)/k, exact. n >= 1.
Rational delta(std::string_view w);

// One LZ76 phrase. `source` is the 1-based start of an earlier occurrence;
// it is empty only for a symbol that has not occurred before.
struct LzPhrase {
    std::uint64_t start = 0;  // 1-based
    std::uint64_t length = 0;
    std::optional<std::uint64_t> source;
    char symbol = 0;  // w[start]

    friend bool operator==(const LzPhrase&, const LzPhrase&) = default;
};

struct LzParse {
    std::vector<LzPhrase> phrases;
    std::uint64_t z() const noexcept { return phrases.size(); }
};

/// Greedy left-to-right LZ76 parse. Each phrase is the longest prefix of the
/// remaining suffix that also starts strictly to its left (overlap allowed),
/// or a single fresh symbol. Linear after the suffix array: the longest
/// previous factor at a phrase start is reached through the nearest suffixes
/// in lexicographic order that start earlier.
LzParse lz76_parse(std::string_view w);

inline std::uint64_t lz76_size(std::string_view w) { return lz76_parse(w).z(); }

// True iff every distinct substring has an occurrence crossing a position of
// `positions` (1-based). O(n^2) over substring lengths.
bool is_attractor(std::string_view w, const std::set<std::uint64_t>& positions);

inline constexpr std::uint64_t kDefaultGammaLimit = 16;
inline constexpr std::uint64_t kDefaultBLimit = 10;

/// Smallest attractor size by increasing-cardinality subset enumeration.
/// Refuses (LimitError) when n > limit.
std::uint64_t gamma_bruteforce(std::string_view w, std::uint64_t limit = kDefaultGammaLimit);

/// Smallest bidirectional macro scheme size: every factorization into k
/// phrases and every source assignment, k = 1, 2, ..., each candidate checked
/// with the macro-scheme validator. Refuses (LimitError) when n > limit.
std::uint64_t b_bruteforce(std::string_view w, std::uint64_t limit = kDefaultBLimit);

struct MeasureReport {
    Rational delta;
    std::uint64_t z = 0;
    std::optional<std::uint64_t> gamma_bruteforce;
    std::optional<std::uint64_t> b_bruteforce;
};

struct MeasureRequest {
    bool gamma = false;
    bool b = false;
    std::uint64_t gamma_limit = kDefaultGammaLimit;
    std::uint64_t b_limit = kDefaultBLimit;
};

MeasureReport measure(std::string_view w, const MeasureRequest& request = {});

}  // namespace nusys
