#include "nusys/experiments.hpp"

#include <chrono>
#include <cstdio>

#include "nusys/error.hpp"
#include "nusys/lsystem.hpp"
#include "nusys/measures.hpp"

namespace nusys {

namespace {

std::vector<ExperimentRow> sweep(const char* what, std::uint64_t lo, std::uint64_t hi, std::uint64_t cap,
                                 LSystem (*make)(std::uint64_t), bool timing) {
    if (lo > hi)
        throw std::invalid_argument(std::string(what) + ": empty range");
    if (hi > cap)
        throw LimitError(std::string(what) + ": upper bound " + std::to_string(hi) + " exceeds the limit of " +
                         std::to_string(cap));
    std::vector<ExperimentRow> rows;
    for (std::uint64_t d = lo; d <= hi; ++d) {
        const auto start = std::chrono::steady_clock::now();
        const LSystem sys = make(d);
        const Text w = generate(sys);
        ExperimentRow row;
        row.d = d;
        row.n = w.size();
        row.size = size(sys);
        row.delta = delta(w);
        row.z = lz76_size(w);
        if (timing)
            row.elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

std::vector<ExperimentRow> delta_vs_ell(std::uint64_t d_min, std::uint64_t d_max, bool timing) {
    return sweep("delta-vs-ell", d_min, d_max, kMaxDeltaSepDepth, &delta_sep_system, timing);
}

std::vector<ExperimentRow> thue_morse_z(std::uint64_t k_min, std::uint64_t k_max, bool timing) {
    return sweep("thue-morse-z", k_min, k_max, kMaxThueMorseOrder, &thue_morse_system, timing);
}

std::string to_csv(const std::vector<ExperimentRow>& rows) {
    std::string out = "d,n,size,delta,z,elapsed_ms\n";
    for (const auto& r : rows) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
        out += std::to_string(r.d) + "," + std::to_string(r.n) + "," + std::to_string(r.size) + "," +
               r.delta.to_string() + "," + std::to_string(r.z) + "," + ms + "\n";
    }
    return out;
}

}  // namespace nusys
