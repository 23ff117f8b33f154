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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <random>
#include <set>

#include "synthrank/composition.hpp"
#include "synthrank/oxidation.hpp"

using namespace synthrank;

namespace {

Composition comp(std::initializer_list<std::pair<std::string, Rational>> items) {
    Composition::CountMap m;
    for (const auto& [k, v] : items) m.emplace(k, v);
    return Composition(std::move(m));
}

/// Independent brute-force product enumeration (no pruning).
std::vector<OxidationAssignment> oracle_assignments(const Composition& c) {
    std::vector<std::string> syms;
    std::vector<const std::vector<int>*> lists;
    for (const auto& [sym, amt] : c.counts()) {
        syms.push_back(sym);
        lists.push_back(&builtin_elements().get(sym).oxidation_states);
    }
    std::vector<OxidationAssignment> out;
    std::vector<int> choice(syms.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == syms.size()) {
            Rational sum(0);
            for (std::size_t k = 0; k < syms.size(); ++k)
                sum += c.count(syms[k]) * Rational(choice[k]);
            if (sum.is_zero()) {
                OxidationAssignment a;
                for (std::size_t k = 0; k < syms.size(); ++k)
                    a.emplace(syms[k], choice[k]);
                out.push_back(a);
            }
            return;
        }
        for (int s : *lists[i]) {
            choice[i] = s;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

TEST_CASE("formula parsing: stated examples") {
    CHECK(parse_formula("Nd3BTeO9") ==
          comp({{"Nd", 3}, {"B", 1}, {"Te", 1}, {"O", 9}}));
    CHECK(parse_formula("O2") == comp({{"O", 2}}));
    CHECK(parse_formula("DyAl3(BO3)4") ==
          comp({{"Dy", 1}, {"Al", 3}, {"B", 4}, {"O", 12}}));
}

TEST_CASE("formula parsing: grammar corners") {
    CHECK(parse_formula("H2O") == comp({{"H", 2}, {"O", 1}}));
    CHECK(parse_formula(" H2 O ") == comp({{"H", 2}, {"O", 1}}));
    CHECK(parse_formula("Ca(OH)2") == comp({{"Ca", 1}, {"O", 2}, {"H", 2}}));
    CHECK(parse_formula("(Ca(OH)2)2") == comp({{"Ca", 2}, {"O", 4}, {"H", 4}}));
    CHECK(parse_formula("H2O0.5") == comp({{"H", 2}, {"O", Rational(1, 2)}}));
    CHECK(parse_formula("Fe2/3O") == comp({{"Fe", Rational(2, 3)}, {"O", 1}}));
    CHECK(parse_formula("FeFe") == comp({{"Fe", 2}}));

    CHECK_THROWS_AS(parse_formula(""), ParseError);
    CHECK_THROWS_AS(parse_formula("Xx2"), ParseError);     // unknown element
    CHECK_THROWS_AS(parse_formula("Qz"), ParseError);
    CHECK_THROWS_AS(parse_formula("Ca(OH2"), ParseError);  // unbalanced parens
    CHECK_THROWS_AS(parse_formula("CaOH)2"), ParseError);
    CHECK_THROWS_AS(parse_formula("H0O"), ParseError);     // zero multiplier
    CHECK_THROWS_AS(parse_formula("H0.0O"), ParseError);
    CHECK_THROWS_AS(parse_formula("()"), ParseError);
    CHECK_THROWS_AS(parse_formula("H2."), ParseError);
}

TEST_CASE("zero counts are dropped, negatives rejected") {
    CHECK(comp({{"Fe", 0}, {"O", 1}}) == comp({{"O", 1}}));
    Composition::CountMap m;
    m.emplace("Fe", Rational(-1));
    CHECK_THROWS_AS(Composition(std::move(m)), ValueError);
}

TEST_CASE("format/parse round-trip over random grammar strings") {
    std::mt19937 rng(42);
    const std::vector<std::string> pool = {"H",  "O",  "Fe", "Na", "Cl", "Ca",
                                           "Ti", "Ba", "Nd", "B",  "Te", "W"};
    std::uniform_int_distribution<int> n_el(1, 5);
    std::uniform_int_distribution<int> count_kind(0, 3);
    std::uniform_int_distribution<int> int_count(1, 12);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);

    for (int t = 0; t < 500; ++t) {
        // build a random grammar-valid string and its expected counts
        std::string text;
        Composition::CountMap expected;
        int n = n_el(rng);
        bool group = t % 3 == 0;
        Rational group_mult(1);
        if (group) text += '(';
        for (int i = 0; i < n; ++i) {
            std::string sym = pool[pick(rng)];
            Rational amount(1);
            switch (count_kind(rng)) {
                case 0: break;
                case 1: amount = Rational(int_count(rng)); break;
                case 2: amount = Rational(int_count(rng), 2); break;
                default: amount = Rational(int_count(rng), 4); break;
            }
            text += sym;
            if (amount != Rational(1)) text += detail::count_to_string(amount);
            auto [it, fresh] = expected.emplace(sym, amount);
            if (!fresh) it->second += amount;
        }
        if (group) {
            int mult = int_count(rng);
            group_mult = Rational(mult);
            text += ')';
            text += std::to_string(mult);
            for (auto& [sym, amt] : expected) amt *= group_mult;
        }
        Composition direct = parse_formula(text);
        CHECK(direct == Composition(expected));
        // canonical formatting parses back to the same composition
        CHECK(parse_formula(format_formula(direct)) == direct);
    }
}

TEST_CASE("canonical formatting orders by electronegativity") {
    CHECK(format_formula(parse_formula("O9BTeNd3")) == "Nd3BTeO9");
    CHECK(format_formula(parse_formula("ClNa")) == "NaCl");
    CHECK(format_formula(parse_formula("O3Fe2")) == "Fe2O3");
}

TEST_CASE("reduce: stated examples") {
    auto [r1, m1] = reduce(comp({{"Nd", 6}, {"B", 2}, {"Te", 2}, {"O", 18}}));
    CHECK(r1 == comp({{"Nd", 3}, {"B", 1}, {"Te", 1}, {"O", 9}}));
    CHECK(m1 == Rational(2));

    auto [r2, m2] = reduce(comp({{"O", 2}}));
    CHECK(r2 == comp({{"O", 1}}));
    CHECK(m2 == Rational(2));

    auto [r3, m3] = reduce(comp({{"Fe", 4}, {"O", 6}}));
    CHECK(r3 == comp({{"Fe", 2}, {"O", 3}}));
    CHECK(m3 == Rational(2));
}

TEST_CASE("reduce: exact reconstruction and gcd-1 counts on random input") {
    std::mt19937 rng(11);
    const std::vector<std::string> pool = {"H", "O", "Fe", "Na", "Ti", "W"};
    std::uniform_int_distribution<int> n_el(1, 5);
    std::uniform_int_distribution<int> num(1, 24);
    std::uniform_int_distribution<int> den(1, 6);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 1000; ++t) {
        Composition::CountMap m;
        int n = n_el(rng);
        for (int i = 0; i < n; ++i) {
            auto [it, fresh] = m.emplace(pool[pick(rng)], Rational(num(rng), den(rng)));
            if (!fresh) it->second += Rational(1);
        }
        Composition c(std::move(m));
        auto [red, mult] = reduce(c);
        CHECK(mult * red == c);  // exact, rational arithmetic
        std::int64_t g = 0;
        for (const auto& [sym, amt] : red.counts()) {
            REQUIRE(amt.is_integer());
            g = gcd_i64(g, amt.num());
        }
        CHECK(g == 1);
        auto [red2, mult2] = reduce(red);
        CHECK(red2 == red);  // idempotent
        CHECK(mult2 == Rational(1));
    }
}

TEST_CASE("molar mass: stated examples and additivity") {
    CHECK_THAT(molar_mass(comp({{"O", 1}})), Catch::Matchers::WithinAbs(15.999, 1e-9));
    CHECK_THAT(molar_mass(parse_formula("TeO2")),
               Catch::Matchers::WithinAbs(159.598, 0.01));
    CHECK_THAT(molar_mass(parse_formula("Nd2O3")),
               Catch::Matchers::WithinAbs(336.481, 0.01));

    std::mt19937 rng(3);
    const std::vector<std::string> pool = {"H", "O", "Fe", "Na", "Ti", "W", "Te"};
    std::uniform_int_distribution<int> cnt(1, 9);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 300; ++t) {
        Composition a = comp({{pool[pick(rng)], cnt(rng)}, {pool[pick(rng)], cnt(rng)}});
        Composition b = comp({{pool[pick(rng)], cnt(rng)}});
        CHECK_THAT(molar_mass(a + b),
                   Catch::Matchers::WithinRel(molar_mass(a) + molar_mass(b), 1e-12));
    }
}

TEST_CASE("contains_any") {
    CHECK(parse_formula("PtO2").contains_any(platinoid_set()));
    CHECK_FALSE(parse_formula("Nd3BTeO9").contains_any(platinoid_set()));
    CHECK_FALSE(parse_formula("PtO2").contains_any({}));
}

TEST_CASE("charge balance: stated examples") {
    auto r = charge_balance_assignments(parse_formula("Nd3BTeO9"));
    REQUIRE(r.determined);
    OxidationAssignment expected = {{"Nd", 3}, {"B", 3}, {"Te", 6}, {"O", -2}};
    bool found = false;
    for (const auto& a : r.assignments) found = found || a == expected;
    CHECK(found);

    auto nacl = charge_balance_assignments(parse_formula("NaCl"));
    REQUIRE(nacl.determined);
    OxidationAssignment na_cl = {{"Na", 1}, {"Cl", -1}};
    bool found2 = false;
    for (const auto& a : nacl.assignments) found2 = found2 || a == na_cl;
    CHECK(found2);

    // single element with only nonzero states can never balance
    auto n2 = charge_balance_assignments(parse_formula("N2"));
    REQUIRE(n2.determined);
    CHECK(n2.assignments.empty());
}

TEST_CASE("charge balance: every assignment sums to exactly zero") {
    std::mt19937 rng(17);
    const std::vector<std::string> pool = {"Na", "Cl", "Fe", "O",  "Ti",
                                           "Cu", "S",  "N",  "H",  "Ca"};
    std::uniform_int_distribution<int> n_el(1, 5);
    std::uniform_int_distribution<int> cnt(1, 4);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int t = 0; t < 400; ++t) {
        Composition::CountMap m;
        int n = n_el(rng);
        for (int i = 0; i < n; ++i) {
            auto [it, fresh] = m.emplace(pool[pick(rng)], Rational(cnt(rng)));
            if (!fresh) it->second += Rational(1);
        }
        Composition c(std::move(m));
        auto r = charge_balance_assignments(c);
        REQUIRE(r.determined);
        for (const auto& a : r.assignments) {
            Rational sum(0);
            for (const auto& [sym, st] : a) sum += c.count(sym) * Rational(st);
            CHECK(sum.is_zero());
        }
        // exhaustive oracle equality
        CHECK(r.assignments == oracle_assignments(c));
    }
}

TEST_CASE("charge balance: budget exhaustion reports undetermined") {
    // four elements force at least five search nodes to reach any leaf
    auto c = parse_formula("Nd3BTeO9");
    auto r = charge_balance_assignments(c, builtin_elements(), /*budget=*/2);
    CHECK_FALSE(r.determined);
    CHECK(r.assignments.empty());
    CHECK(charge_feasibility(c, builtin_elements(), 2) ==
          ChargeFeasibility::kUndetermined);
    // a composition whose bounds prove infeasibility immediately stays
    // determined even under the same tiny budget
    CHECK(charge_feasibility(parse_formula("NaClFeOTiCuS"), builtin_elements(), 2) ==
          ChargeFeasibility::kUnbalanced);
}

TEST_CASE("charge feasibility matches enumeration") {
    CHECK(charge_feasibility(parse_formula("MgO")) == ChargeFeasibility::kBalanced);
    CHECK(charge_feasibility(parse_formula("N2")) == ChargeFeasibility::kUnbalanced);
    CHECK(charge_feasibility(parse_formula("Tb4O7")) ==
          ChargeFeasibility::kUnbalanced);  // genuinely mixed-valent
}

TEST_CASE("elements lacking configured states raise") {
    CHECK_THROWS_AS(charge_balance_assignments(parse_formula("HeO")), ValueError);
}

TEST_CASE("anonymous formula") {
    CHECK(anonymous_formula(parse_formula("DyO2")) == "AB2");
    CHECK(anonymous_formula(parse_formula("Nd3BTeO9")) == "ABC3D9");
    CHECK(anonymous_formula(parse_formula("Fe2O3")) == "A2B3");
    CHECK(anonymous_formula(parse_formula("Fe4O6")) == "A2B3");  // reduced first
    CHECK(anonymous_formula(parse_formula("MgO")) == "AB");
}

TEST_CASE("element table: builtin sanity and file round-trip") {
    const auto& t = builtin_elements();
    REQUIRE(t.size() == 118);
    CHECK(t.get("O").z == 8);
    CHECK(t.get(60).symbol == "Nd");
    CHECK_THAT(t.get("Na").electronegativity, Catch::Matchers::WithinAbs(0.93, 1e-12));
    CHECK_THAT(t.get("Cl").electronegativity, Catch::Matchers::WithinAbs(3.16, 1e-12));
    CHECK_FALSE(t.get("He").has_electronegativity());
    CHECK_THROWS_AS(t.get("Zz"), ValueError);

    // the shipped data file matches the builtin table
    ElementTable loaded = load_element_table(SYNTHRANK_REPO_DATA_DIR "/elements.dat");
    REQUIRE(loaded.size() == t.size());
    for (const auto& e : t.rows()) {
        const auto& l = loaded.get(e.symbol);
        CHECK(l.z == e.z);
        CHECK(l.molar_mass == e.molar_mass);
        CHECK(l.oxidation_states == e.oxidation_states);
        CHECK(l.covalent_radius == e.covalent_radius);
        CHECK(l.group == e.group);
        CHECK(l.row == e.row);
        if (e.has_electronegativity())
            CHECK(l.electronegativity == e.electronegativity);
        else
            CHECK_FALSE(l.has_electronegativity());
    }

    // save/load round-trip
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/synthrank_elements_roundtrip.dat";
    save_element_table(t, tmp);
    ElementTable again = load_element_table(tmp);
    REQUIRE(again.size() == t.size());
    CHECK(again.get("Te").molar_mass == t.get("Te").molar_mass);
    std::remove(tmp.c_str());
}
