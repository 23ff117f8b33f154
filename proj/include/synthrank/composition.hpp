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
/// Composition: an exact element -> amount mapping, plus the chemical
/// formula grammar.
///
/// Grammar:  formula := unit+
///           unit    := element count? | '(' formula ')' count?
///           element := [A-Z][a-z]?
///           count   := digits | digits '.' digits | digits '/' digits
/// Counts are exact rationals (decimals such as "O0.5" parse to 1/2);
/// interior whitespace between tokens is allowed.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "synthrank/elements.hpp"
#include "synthrank/errors.hpp"
#include "synthrank/rational.hpp"

namespace synthrank {

class Composition {
public:
    using CountMap = std::map<std::string, Rational>;

    Composition() = default;

    /// Validates symbols against the table, drops zero counts, rejects
    /// negative amounts.
    explicit Composition(CountMap counts,
                         const ElementTable& table = builtin_elements()) {
        for (auto& [sym, amt] : counts) {
            if (!table.contains(sym))
                throw ValueError("unknown element symbol: " + sym);
            if (amt.is_negative())
                throw ValueError("negative amount for element " + sym);
            if (!amt.is_zero()) counts_.emplace(sym, amt);
        }
    }

    const CountMap& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }
    std::size_t n_elements() const { return counts_.size(); }

    Rational count(std::string_view symbol) const {
        auto it = counts_.find(std::string(symbol));
        return it == counts_.end() ? Rational(0) : it->second;
    }

    bool contains(std::string_view symbol) const {
        return counts_.find(std::string(symbol)) != counts_.end();
    }

    /// True iff this composition shares an element with `elems`.
    bool contains_any(const std::set<std::string>& elems) const {
        for (const auto& [sym, amt] : counts_)
            if (elems.count(sym)) return true;
        return false;
    }

    Rational total_atoms() const {
        Rational t;
        for (const auto& [sym, amt] : counts_) t += amt;
        return t;
    }

    /// 118-bit element presence mask indexed by Z-1.
    std::array<std::uint64_t, 2> element_mask(
        const ElementTable& table = builtin_elements()) const {
        std::array<std::uint64_t, 2> mask = {0, 0};
        for (const auto& [sym, amt] : counts_) {
            int bit = table.get(sym).z - 1;
            mask[bit / 64] |= std::uint64_t(1) << (bit % 64);
        }
        return mask;
    }

    friend bool operator==(const Composition& a, const Composition& b) {
        return a.counts_ == b.counts_;
    }
    friend bool operator!=(const Composition& a, const Composition& b) {
        return !(a == b);
    }
    friend bool operator<(const Composition& a, const Composition& b) {
        return a.counts_ < b.counts_;
    }

    friend Composition operator+(const Composition& a, const Composition& b) {
        CountMap m = a.counts_;
        for (const auto& [sym, amt] : b.counts_) {
            auto [it, inserted] = m.emplace(sym, amt);
            if (!inserted) it->second += amt;
        }
        Composition r;
        r.counts_ = std::move(m);
        return r;
    }

    friend Composition operator*(const Rational& k, const Composition& c) {
        if (k.is_negative()) throw ValueError("negative composition scale");
        Composition r;
        if (k.is_zero()) return r;
        for (const auto& [sym, amt] : c.counts_) r.counts_.emplace(sym, k * amt);
        return r;
    }

private:
    CountMap counts_;
};

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view text, const ElementTable& table)
        : text_(text), table_(table) {}

    Composition::CountMap run() {
        Composition::CountMap out;
        parse_sequence(out, Rational(1), /*depth=*/0);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected character");
        if (out.empty()) fail("empty formula");
        return out;
    }

private:
    void parse_sequence(Composition::CountMap& out, const Rational& scale,
                        int depth) {
        bool saw_unit = false;
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == ')') {
                if (depth == 0) fail("unbalanced ')'");
                break;
            }
            if (c == '(') {
                ++pos_;
                Composition::CountMap group;
                parse_sequence(group, Rational(1), depth + 1);
                skip_ws();
                if (pos_ >= text_.size() || text_[pos_] != ')')
                    fail("unbalanced '('");
                ++pos_;
                Rational mult = parse_count();
                for (auto& [sym, amt] : group) add(out, sym, scale * mult * amt);
                saw_unit = true;
                continue;
            }
            if (std::isupper(static_cast<unsigned char>(c))) {
                std::string sym(1, c);
                ++pos_;
                if (pos_ < text_.size() &&
                    std::islower(static_cast<unsigned char>(text_[pos_]))) {
                    sym += text_[pos_];
                    ++pos_;
                }
                if (!table_.contains(sym)) fail("unknown element symbol '" + sym + "'");
                add(out, sym, scale * parse_count());
                saw_unit = true;
                continue;
            }
            fail("unexpected character");
        }
        if (!saw_unit) fail("empty group");
    }

    /// Count following an element or group; 1 when absent.
    Rational parse_count() {
        skip_ws();
        if (pos_ >= text_.size() ||
            !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            return Rational(1);
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/')) {
            ++pos_;
            std::size_t digits = 0;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++digits;
            }
            if (digits == 0) fail("malformed count");
        }
        Rational v = Rational::parse(std::string(text_.substr(start, pos_ - start)));
        if (!v.is_positive()) fail("zero or negative multiplier");
        return v;
    }

    void add(Composition::CountMap& m, const std::string& sym, const Rational& amt) {
        auto [it, inserted] = m.emplace(sym, amt);
        if (!inserted) it->second += amt;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("formula '" + std::string(text_) + "': " + msg, pos_);
    }

    std::string_view text_;
    const ElementTable& table_;
    std::size_t pos_ = 0;
};

/// Exact decimal rendering when the denominator is 2^a 5^b, else "n/d".
inline std::string count_to_string(const Rational& r) {
    if (r.is_integer()) return std::to_string(r.num());
    std::int64_t d = r.den();
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return r.str();  // non-terminating decimal
    int k = twos > fives ? twos : fives;
    __int128 scaled = r.num();
    for (int i = 0; i < k; ++i) scaled *= 10;
    scaled /= r.den();
    std::string digits;
    __int128 v = scaled < 0 ? -scaled : scaled;
    while (v > 0) {
        digits.insert(digits.begin(), char('0' + int(v % 10)));
        v /= 10;
    }
    while (static_cast<int>(digits.size()) <= k) digits.insert(digits.begin(), '0');
    digits.insert(digits.size() - k, 1, '.');
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return (r.is_negative() ? "-" : "") + digits;
}

}  // namespace detail

/// Parses a chemical formula string ("Nd3BTeO9", "DyAl3(BO3)4", "H2O0.5").
inline Composition parse_formula(std::string_view text,
                                 const ElementTable& table = builtin_elements()) {
    if (text.empty()) throw ParseError("empty formula");
    detail::FormulaParser p(text, table);
    return Composition(p.run(), table);
}

/// Canonical formula string: elements ordered by ascending Pauling
/// electronegativity (missing values sort last), symbol as tiebreak.
/// format_formula(parse_formula(s)) parses back to an equal Composition.
inline std::string format_formula(const Composition& c,
                                  const ElementTable& table = builtin_elements()) {
    std::vector<std::pair<double, std::string>> order;
    order.reserve(c.n_elements());
    for (const auto& [sym, amt] : c.counts()) {
        const auto& e = table.get(sym);
        double en = e.has_electronegativity() ? e.electronegativity : 1e9;
        order.emplace_back(en, sym);
    }
    std::sort(order.begin(), order.end());
    std::string out;
    for (const auto& [en, sym] : order) {
        out += sym;
        Rational amt = c.count(sym);
        if (amt != Rational(1)) out += detail::count_to_string(amt);
    }
    return out;
}

/// Scales counts to coprime integers; `multiplier * reduced == c` exactly.
inline std::pair<Composition, Rational> reduce(const Composition& c) {
    if (c.empty()) return {c, Rational(1)};
    std::int64_t den_lcm = 1;
    for (const auto& [sym, amt] : c.counts()) den_lcm = lcm_i64(den_lcm, amt.den());
    std::int64_t num_gcd = 0;
    for (const auto& [sym, amt] : c.counts()) {
        Rational scaled = amt * Rational(den_lcm);
        num_gcd = gcd_i64(num_gcd, scaled.num());
    }
    Rational mult(num_gcd, den_lcm);
    Composition reduced = mult.reciprocal() * c;
    return {reduced, mult};
}

/// Sum of count * molar mass, g/mol.
inline double molar_mass(const Composition& c,
                         const ElementTable& table = builtin_elements()) {
    double total = 0.0;
    for (const auto& [sym, amt] : c.counts())
        total += amt.to_double() * table.get(sym).molar_mass;
    return total;
}

/// Anonymous (prototype) formula of the reduced composition: counts
/// sorted ascending, elements renamed A, B, C, ... ("DyO2" -> "AB2",
/// "Nd3BTeO9" -> "ABC3D9"). Count 1 is omitted.
inline std::string anonymous_formula(const Composition& c) {
    auto [red, mult] = reduce(c);
    std::vector<Rational> amounts;
    amounts.reserve(red.n_elements());
    for (const auto& [sym, amt] : red.counts()) amounts.push_back(amt);
    std::sort(amounts.begin(), amounts.end());
    std::string out;
    char letter = 'A';
    for (const auto& amt : amounts) {
        out += letter;
        if (amt != Rational(1)) out += detail::count_to_string(amt);
        if (letter < 'Z') ++letter;
    }
    return out;
}

/// Default element sets used by the screening filters.
inline const std::set<std::string>& platinoid_set() {
    static const std::set<std::string> s = {"Ru", "Rh", "Pd", "Os", "Ir", "Pt"};
    return s;
}

inline const std::set<std::string>& default_toxic_set() {
    static const std::set<std::string> s = {"Cd", "Hg", "Pb", "Tl",
                                            "As", "Be", "Os"};
    return s;
}

}  // namespace synthrank
