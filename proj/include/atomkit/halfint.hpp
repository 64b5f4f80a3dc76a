#pragma once

#include "atomkit/error.hpp"

#include <compare>
#include <cstdlib>
#include <string>

namespace atomkit {

// Integer or half-integer stored as twice its value.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int t) { HalfInt h; h.twice = t; return h; }
    static constexpr HalfInt from_int(int n) { return from_twice(2 * n); }

    constexpr double value() const { return 0.5 * twice; }
    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr int as_int() const { return twice / 2; }

    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice + o.twice); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice - o.twice); }
    constexpr HalfInt operator-() const { return from_twice(-twice); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const
    {
        return is_integer() ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
    }
};

inline constexpr HalfInt half = HalfInt::from_twice(1);

// (J, M) is a valid pair when 2J >= 0, |M| <= J and J - M is an integer.
inline bool valid_pair(HalfInt J, HalfInt M)
{
    return J.twice >= 0 && std::abs(M.twice) <= J.twice && (J.twice - M.twice) % 2 == 0;
}

inline void require_pair(HalfInt J, HalfInt M)
{
    if (!valid_pair(J, M))
        throw DomainError("invalid quantum-number pair J=" + J.str() + " M=" + M.str());
}

// Parses "3", "-1/2", "1.5".
HalfInt parse_halfint(const std::string& s);

}  // namespace atomkit
