#pragma once

#include "atomkit/error.hpp"

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace atomkit {

class Rational {
public:
    constexpr Rational(std::int64_t n = 0, std::int64_t d = 1) : num_(n), den_(d)
    {
        if (d == 0) throw DomainError("rational with zero denominator");
        normalize();
    }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr double to_double() const { return double(num_) / double(den_); }

    friend constexpr Rational operator+(Rational a, Rational b)
    {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator-(Rational a, Rational b)
    {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator*(Rational a, Rational b)
    {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend constexpr Rational operator/(Rational a, Rational b)
    {
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    friend constexpr bool operator==(Rational a, Rational b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const
    {
        return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
    }
    friend std::ostream& operator<<(std::ostream& os, Rational r) { return os << r.str(); }

private:
    constexpr void normalize()
    {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        auto g = std::gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_, den_;
};

}  // namespace atomkit
