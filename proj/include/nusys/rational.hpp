#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace nusys {

// Non-negative exact fraction kept in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::uint64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(std::uint64_t num, std::uint64_t den) {
        if (den == 0)
            throw std::invalid_argument("rational with zero denominator");
        const std::uint64_t g = std::gcd(num, den);
        num_ = num / g;
        den_ = den / g;
    }

    constexpr std::uint64_t num() const noexcept { return num_; }
    constexpr std::uint64_t den() const noexcept { return den_; }

    friend bool operator==(const Rational&, const Rational&) = default;

    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
        const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
        if (lhs < rhs)
            return std::strong_ordering::less;
        if (lhs > rhs)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

    // "7/3", or "2" when the denominator is one.
    std::string to_string() const {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

}  // namespace nusys
