#include "nusys/measures.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "nusys/detail/suffix_array.hpp"
#include "nusys/error.hpp"
#include "nusys/macro_scheme.hpp"

namespace nusys {

namespace {

void require_nonempty(std::string_view w, const char* op) {
    if (w.empty())
        throw std::invalid_argument(std::string(op) + ": empty string");
}

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
    const auto p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
    if (r >= kMod)
        r -= kMod;
    return r;
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = a + b;
    return r >= kMod ? r - kMod : r;
}

}  // namespace

std::uint64_t string_complexity(std::string_view w, std::uint64_t k) {
    const std::uint64_t n = w.size();
    if (k < 1 || k > n)
        throw std::invalid_argument("string_complexity: k=" + std::to_string(k) + " outside [1," +
                                    std::to_string(n) + "]");
    constexpr std::uint64_t base = 1'000'003;
    std::uint64_t top = 1;  // base^(k-1)
    for (std::uint64_t t = 1; t < k; ++t)
        top = mul_mod(top, base);

    std::uint64_t h = 0;
    for (std::uint64_t t = 0; t < k; ++t)
        h = add_mod(mul_mod(h, base), static_cast<unsigned char>(w[t]) + 1);

    // hash -> starts of the distinct windows seen with that hash
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> seen;
    seen.reserve(n - k + 1);
    std::uint64_t distinct = 0;
    for (std::uint64_t i = 0;; ++i) {
        auto& bucket = seen[h];
        const bool fresh = std::none_of(bucket.begin(), bucket.end(), [&](std::uint64_t j) {
            return std::memcmp(w.data() + i, w.data() + j, k) == 0;
        });
        if (fresh) {
            bucket.push_back(i);
            ++distinct;
        }
        if (i + k == n)
            break;
        const std::uint64_t out = mul_mod(static_cast<unsigned char>(w[i]) + 1, top);
        h = add_mod(h, kMod - out);
        h = add_mod(mul_mod(h, base), static_cast<unsigned char>(w[i + k]) + 1);
    }
    return distinct;
}

std::vector<std::uint64_t> complexity_profile(std::string_view w) {
    const std::size_t n = w.size();
    std::vector<std::uint64_t> profile(n, 0);
    if (n == 0)
        return profile;
    const auto sa = detail::suffix_array(w);
    const auto lcp = detail::lcp_array(w, sa);
    // Suffix sa[r] starts distinct substrings of every length in (lcp[r], n - sa[r]].
    std::vector<std::int64_t> diff(n + 2, 0);
    for (std::size_t r = 0; r < n; ++r) {
        ++diff[lcp[r] + 1];
        --diff[n - sa[r] + 1];
    }
    std::int64_t running = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        running += diff[k];
        profile[k - 1] = static_cast<std::uint64_t>(running);
    }
    return profile;
}

Rational delta(std::string_view w) {
    require_nonempty(w, "delta");
    const auto profile = complexity_profile(w);
    std::uint64_t best_num = profile[0], best_den = 1;
    for (std::uint64_t k = 2; k <= profile.size(); ++k) {
        const std::uint64_t s = profile[k - 1];
        if (static_cast<unsigned __int128>(s) * best_den > static_cast<unsigned __int128>(best_num) * k) {
            best_num = s;
            best_den = k;
        }
    }
    return Rational(best_num, best_den);
}

LzParse lz76_parse(std::string_view w) {
    require_nonempty(w, "lz76_parse");
    const std::size_t n = w.size();
    const auto sa = detail::suffix_array(w);
    std::vector<std::uint32_t> rank(n);
    for (std::size_t r = 0; r < n; ++r)
        rank[sa[r]] = static_cast<std::uint32_t>(r);

    // For each rank, the nearest rank on either side whose suffix starts earlier.
    constexpr std::uint32_t none = UINT32_MAX;
    std::vector<std::uint32_t> prev_smaller(n, none), next_smaller(n, none);
    std::vector<std::uint32_t> stack;
    stack.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        while (!stack.empty() && sa[stack.back()] > sa[r]) {
            next_smaller[stack.back()] = static_cast<std::uint32_t>(r);
            stack.pop_back();
        }
        prev_smaller[r] = stack.empty() ? none : stack.back();
        stack.push_back(static_cast<std::uint32_t>(r));
    }

    auto match = [&](std::size_t j, std::size_t i) {
        std::size_t l = 0;
        while (i + l < n && w[j + l] == w[i + l])
            ++l;
        return l;
    };

    LzParse parse;
    std::size_t i = 0;
    while (i < n) {
        std::size_t best = 0, src = 0;
        for (std::uint32_t r : {prev_smaller[rank[i]], next_smaller[rank[i]]}) {
            if (r == none)
                continue;
            const std::size_t l = match(sa[r], i);
            if (l > best || (l == best && l > 0 && sa[r] < src)) {
                best = l;
                src = sa[r];
            }
        }
        LzPhrase ph;
        ph.start = i + 1;
        ph.symbol = w[i];
        if (best == 0) {
            ph.length = 1;
        } else {
            ph.length = best;
            ph.source = src + 1;
        }
        parse.phrases.push_back(ph);
        i += ph.length;
    }
    return parse;
}

bool is_attractor(std::string_view w, const std::set<std::uint64_t>& positions) {
    const std::size_t n = w.size();
    for (auto p : positions)
        if (p < 1 || p > n)
            throw std::invalid_argument("is_attractor: position " + std::to_string(p) + " outside [1," +
                                        std::to_string(n) + "]");
    if (n == 0)
        return true;
    if (positions.empty())
        return false;

    // reach[i]: shortest window starting at i (0-based) that crosses a marked position.
    std::vector<std::size_t> reach(n);
    {
        std::size_t next_marked = n + 1;  // sentinel: unreachable
        for (std::size_t i = n; i-- > 0;) {
            if (positions.count(i + 1))
                next_marked = i;
            reach[i] = next_marked == n + 1 ? n + 1 : next_marked - i + 1;
        }
    }

    const auto sa = detail::suffix_array(w);
    const auto lcp = detail::lcp_array(w, sa);
    // For each length L, the windows equal to one another form runs of
    // consecutive suffix-array ranks with lcp >= L.
    for (std::size_t len = 1; len <= n; ++len) {
        std::size_t r = 0;
        while (r < n) {
            if (n - sa[r] < len) {
                ++r;
                continue;
            }
            bool covered = reach[sa[r]] <= len;
            std::size_t q = r + 1;
            while (q < n && lcp[q] >= len) {
                covered = covered || reach[sa[q]] <= len;
                ++q;
            }
            if (!covered)
                return false;
            r = q;
        }
    }
    return true;
}

std::uint64_t gamma_bruteforce(std::string_view w, std::uint64_t limit) {
    require_nonempty(w, "gamma_bruteforce");
    const std::size_t n = w.size();
    if (n > limit)
        throw LimitError("gamma brute force: n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit) +
                         " (too large for brute force)");
    if (n > 63)
        throw LimitError("gamma brute force: n=" + std::to_string(n) + " is too large for brute force (max 63)");

    // A set attracts substring s iff it meets the union of the spans of s's occurrences.
    std::unordered_map<std::string_view, std::uint64_t> spans;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t mask = 0;
        for (std::size_t len = 1; i + len <= n; ++len) {
            mask |= std::uint64_t{1} << (i + len - 1);
            spans[w.substr(i, len)] |= mask;
        }
    }
    std::vector<std::uint64_t> masks;
    masks.reserve(spans.size());
    for (const auto& [_, m] : spans)
        masks.push_back(m);
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    // Narrow spans first: they reject candidate sets soonest.
    std::stable_sort(masks.begin(), masks.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });

    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t k = 1; k <= n; ++k) {
        // Gosper's hack over k-subsets of [0,n).
        std::uint64_t set = (std::uint64_t{1} << k) - 1;
        while (set <= all) {
            if (std::all_of(masks.begin(), masks.end(), [set](std::uint64_t m) { return (m & set) != 0; }))
                return k;
            const std::uint64_t c = set & -set;
            const std::uint64_t r = set + c;
            if (r == 0)
                break;
            set = (((r ^ set) >> 2) / c) | r;
        }
    }
    return n;
}

namespace {

class SchemeSearch {
public:
    explicit SchemeSearch(std::string_view w) : w_(w), n_(w.size()) {}

    bool exists_with(std::size_t k) {
        phrases_.clear();
        return split(0, k);
    }

private:
    // Phrases cover w[0,pos); `left` phrases remain for w[pos,n).
    bool split(std::size_t pos, std::size_t left) {
        if (pos == n_)
            return left == 0 && resolves();
        if (left == 0 || n_ - pos < left)
            return false;
        phrases_.emplace_back(Literal{w_[pos]});
        if (split(pos + 1, left - 1))
            return true;
        phrases_.pop_back();
        const std::size_t max_len = n_ - pos - (left - 1);
        for (std::size_t len = 2; len <= max_len; ++len) {
            const auto piece = w_.substr(pos, len);
            for (std::size_t s = 0; s + len <= n_; ++s) {
                if (s == pos || w_.substr(s, len) != piece)
                    continue;
                phrases_.emplace_back(Copy{s + 1, len});
                if (split(pos + len, left - 1))
                    return true;
                phrases_.pop_back();
            }
        }
        return false;
    }

    bool resolves() const { return !detail::find_cycle(phrases_, n_).has_value(); }

    std::string_view w_;
    std::size_t n_;
    std::vector<Phrase> phrases_;
};

}  // namespace

std::uint64_t b_bruteforce(std::string_view w, std::uint64_t limit) {
    require_nonempty(w, "b_bruteforce");
    const std::size_t n = w.size();
    if (n > limit)
        throw LimitError("b brute force: n=" + std::to_string(n) + " exceeds limit " + std::to_string(limit) +
                         " (too large for brute force)");
    SchemeSearch search(w);
    for (std::size_t k = 1; k <= n; ++k)
        if (search.exists_with(k))
            return k;
    return n;
}

MeasureReport measure(std::string_view w, const MeasureRequest& request) {
    MeasureReport report;
    report.delta = delta(w);
    report.z = lz76_size(w);
    if (request.gamma)
        report.gamma_bruteforce = gamma_bruteforce(w, request.gamma_limit);
    if (request.b)
        report.b_bruteforce = b_bruteforce(w, request.b_limit);
    return report;
}

}  // namespace nusys
