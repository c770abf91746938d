#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace nusys::detail {

// Suffix array by prefix doubling with radix passes, O(n log n).
std::vector<std::uint32_t> suffix_array(std::string_view text);

// lcp[r] = LCP(suffix sa[r-1], suffix sa[r]); lcp[0] = 0. Kasai et al.
std::vector<std::uint32_t> lcp_array(std::string_view text, const std::vector<std::uint32_t>& sa);

}  // namespace nusys::detail
