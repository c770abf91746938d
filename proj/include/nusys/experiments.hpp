#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nusys/checked.hpp"
#include "nusys/rational.hpp"

namespace nusys {

struct ExperimentRow {
    std::uint64_t d = 0;
    Length n = 0;
    std::uint64_t size = 0;
    Rational delta;
    std::uint64_t z = 0;
    double elapsed_ms = 0;  // 0 unless timing was requested
};

inline constexpr std::uint64_t kMaxDeltaSepDepth = 22;
inline constexpr std::uint64_t kMaxThueMorseOrder = 23;

// Rows for d = d_min..d_max of the 0 -> 001, 1 -> 1 family.
std::vector<ExperimentRow> delta_vs_ell(std::uint64_t d_min, std::uint64_t d_max, bool timing = false);

// Rows for k = k_min..k_max of the Thue-Morse prefix t_k (n = 2^k).
std::vector<ExperimentRow> thue_morse_z(std::uint64_t k_min, std::uint64_t k_max, bool timing = false);

// Header "d,n,size,delta,z,elapsed_ms", one line per row.
std::string to_csv(const std::vector<ExperimentRow>& rows);

}  // namespace nusys
