// Copyright 2026 The synthrank Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
/// Exact rational arithmetic for stoichiometry and reaction balancing.
/// Overflow past 64 bits throws instead of wrapping.

#include <cstdint>
#include <numeric>
#include <string>

#include "synthrank/errors.hpp"

namespace synthrank {

class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw ValueError("rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_negative() const { return num_ < 0; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                         i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + (-b);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw ValueError("rational division by zero");
        return from_i128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) {
        return !(a == b);
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return !(b < a);
    }
    friend bool operator>=(const Rational& a, const Rational& b) {
        return !(a < b);
    }

    Rational abs() const { return num_ < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (num_ == 0) throw ValueError("reciprocal of zero");
        Rational r;
        r.num_ = den_;
        r.den_ = num_;
        if (r.den_ < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        return r;
    }

    /// "3", "-1/2", ...
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "3", "-2/5" or a decimal literal such as "0.25".
    static Rational parse(const std::string& text) {
        if (text.empty()) throw ParseError("empty rational literal");
        auto slash = text.find('/');
        try {
            if (slash != std::string::npos) {
                std::int64_t n = std::stoll(text.substr(0, slash));
                std::int64_t d = std::stoll(text.substr(slash + 1));
                return Rational(n, d);
            }
            auto dot = text.find('.');
            if (dot == std::string::npos) return Rational(std::stoll(text));
            std::string digits = text.substr(0, dot) + text.substr(dot + 1);
            std::size_t frac_len = text.size() - dot - 1;
            if (frac_len == 0 || frac_len > 18)
                throw ParseError("bad decimal literal: " + text);
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rational(std::stoll(digits), den);
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational literal: " + text);
        } catch (const std::out_of_range&) {
            throw ValueError("rational literal out of range: " + text);
        }
    }

private:
    using i128 = __int128;

    static Rational from_i128(i128 n, i128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (n < lo || n > hi || d > hi)
            throw ValueError("rational arithmetic overflow");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

inline std::int64_t lcm_i64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    std::int64_t g = std::gcd(a, b);
    __int128 l = (__int128)(a / g) * b;
    if (l < 0) l = -l;
    if (l > INT64_MAX) throw ValueError("lcm overflow");
    return static_cast<std::int64_t>(l);
}

}  // namespace synthrank
