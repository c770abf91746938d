#include "nusys/detail/suffix_array.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace nusys::detail {

std::vector<std::uint32_t> suffix_array(std::string_view text) {
    const std::size_t n = text.size();
    if (n >= std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("text too long for 32-bit suffix array");
    std::vector<std::uint32_t> sa(n), rank(n), tmp(n), next(n);
    if (n == 0)
        return sa;

    for (std::size_t i = 0; i < n; ++i)
        rank[i] = static_cast<unsigned char>(text[i]) + 1;  // 0 is reserved for "past the end"
    std::size_t classes = 257;

    std::vector<std::uint32_t> count;
    for (std::size_t k = 1;; k <<= 1) {
        // Sort by the second key (rank[i + k]), then stable by the first key.
        for (std::size_t i = 0; i < n; ++i)
            next[i] = i + k < n ? rank[i + k] : 0;

        count.assign(classes + 1, 0);
        for (std::size_t i = 0; i < n; ++i)
            ++count[next[i]];
        for (std::size_t c = 1; c <= classes; ++c)
            count[c] += count[c - 1];
        for (std::size_t i = n; i-- > 0;)
            tmp[--count[next[i]]] = static_cast<std::uint32_t>(i);

        count.assign(classes + 1, 0);
        for (std::size_t i = 0; i < n; ++i)
            ++count[rank[i]];
        for (std::size_t c = 1; c <= classes; ++c)
            count[c] += count[c - 1];
        for (std::size_t r = n; r-- > 0;) {
            const auto i = tmp[r];
            sa[--count[rank[i]]] = i;
        }

        tmp[sa[0]] = 1;
        for (std::size_t r = 1; r < n; ++r) {
            const auto a = sa[r - 1], b = sa[r];
            tmp[b] = tmp[a] + ((rank[a] != rank[b] || next[a] != next[b]) ? 1 : 0);
        }
        rank.swap(tmp);
        classes = rank[sa[n - 1]];
        if (classes == n || k >= n)
            break;
    }
    return sa;
}

std::vector<std::uint32_t> lcp_array(std::string_view text, const std::vector<std::uint32_t>& sa) {
    const std::size_t n = text.size();
    std::vector<std::uint32_t> rank(n), lcp(n, 0);
    for (std::size_t r = 0; r < n; ++r)
        rank[sa[r]] = static_cast<std::uint32_t>(r);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h])
            ++h;
        lcp[rank[i]] = static_cast<std::uint32_t>(h);
        if (h > 0)
            --h;
    }
    return lcp;
}

}  // namespace nusys::detail
