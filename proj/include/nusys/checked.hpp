#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "nusys/error.hpp"

namespace nusys {

// Lengths and positions are unsigned but capped at 2^63 - 1.
using Length = std::uint64_t;
inline constexpr Length kMaxLength = static_cast<Length>(std::numeric_limits<std::int64_t>::max());

// Upper bound on any string this library materializes in memory.
inline constexpr Length kMaxMaterialized = Length{1} << 32;

inline void require_materializable(Length n, std::string_view what) {
    if (n > kMaxMaterialized)
        throw LimitError(std::string(what) + ": " + std::to_string(n) + " symbols is too large to materialize");
}

inline Length checked_add(Length a, Length b, std::string_view what = "length") {
    if (a > kMaxLength - b)
        throw OverflowError(std::string(what) + " exceeds 2^63-1");
    return a + b;
}

inline Length checked_mul(Length a, Length b, std::string_view what = "length") {
    if (a != 0 && b > kMaxLength / a)
        throw OverflowError(std::string(what) + " exceeds 2^63-1");
    return a * b;
}

inline Length saturating_add(Length a, Length b, Length cap) {
    return (a >= cap || b >= cap - a) ? cap : a + b;
}

}  // namespace nusys
