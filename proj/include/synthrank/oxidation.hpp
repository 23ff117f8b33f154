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
/// Charge-balance analysis: enumerate neutral oxidation-state assignments
/// (one state per element, drawn from each element's configured list).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "synthrank/composition.hpp"
#include "synthrank/elements.hpp"
#include "synthrank/errors.hpp"

namespace synthrank {

/// One state per element; guaranteed to satisfy sum(count * state) == 0.
using OxidationAssignment = std::map<std::string, int>;

/// Node budget for the assignment search. Exceeding it yields
/// "undetermined" rather than an error.
inline constexpr std::uint64_t kDefaultChargeBudget = 1'000'000;

enum class ChargeFeasibility { kBalanced, kUnbalanced, kUndetermined };

struct ChargeBalanceResult {
    /// False when the search budget was exhausted; `assignments` is then
    /// a lower bound, not the full set.
    bool determined = true;
    std::vector<OxidationAssignment> assignments;
};

namespace detail {

struct ChargeSearch {
    std::vector<std::string> symbols;
    std::vector<std::int64_t> weights;          // integer counts after clearing denominators
    std::vector<const std::vector<int>*> states;
    std::vector<std::int64_t> min_suffix;       // min/max achievable charge of suffix
    std::vector<std::int64_t> max_suffix;

    explicit ChargeSearch(const Composition& c, const ElementTable& table) {
        std::int64_t den_lcm = 1;
        for (const auto& [sym, amt] : c.counts())
            den_lcm = lcm_i64(den_lcm, amt.den());
        for (const auto& [sym, amt] : c.counts()) {
            const auto& e = table.get(sym);
            if (e.oxidation_states.empty())
                throw ValueError("no oxidation states configured for element " + sym);
            symbols.push_back(sym);
            weights.push_back(amt.num() * (den_lcm / amt.den()));
            states.push_back(&e.oxidation_states);
        }
        std::size_t n = symbols.size();
        min_suffix.assign(n + 1, 0);
        max_suffix.assign(n + 1, 0);
        for (std::size_t i = n; i-- > 0;) {
            std::int64_t lo = INT64_MAX, hi = INT64_MIN;
            for (int s : *states[i]) {
                std::int64_t v = weights[i] * s;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            min_suffix[i] = min_suffix[i + 1] + lo;
            max_suffix[i] = max_suffix[i + 1] + hi;
        }
    }

    /// Depth-first product walk with partial-sum pruning. Returns false
    /// when the node budget ran out.
    template <typename OnHit>
    bool walk(std::uint64_t budget, OnHit&& on_hit) const {
        std::vector<int> choice(symbols.size(), 0);
        std::uint64_t nodes = 0;
        return descend(0, 0, choice, nodes, budget, on_hit);
    }

private:
    template <typename OnHit>
    bool descend(std::size_t i, std::int64_t sum, std::vector<int>& choice,
                 std::uint64_t& nodes, std::uint64_t budget, OnHit& on_hit) const {
        if (++nodes > budget) return false;
        if (i == symbols.size()) {
            if (sum == 0) {
                OxidationAssignment a;
                for (std::size_t k = 0; k < symbols.size(); ++k)
                    a.emplace(symbols[k], choice[k]);
                if (!on_hit(a)) return false;
            }
            return true;
        }
        for (int s : *states[i]) {
            std::int64_t next = sum + weights[i] * s;
            if (next + min_suffix[i + 1] > 0 || next + max_suffix[i + 1] < 0)
                continue;
            choice[i] = s;
            if (!descend(i + 1, next, choice, nodes, budget, on_hit)) return false;
        }
        return true;
    }
};

}  // namespace detail

/// Exhaustively enumerates neutral oxidation-state assignments. The
/// enumeration order follows the composition's sorted element order and
/// each element's configured state order.
inline ChargeBalanceResult charge_balance_assignments(
    const Composition& c, const ElementTable& table = builtin_elements(),
    std::uint64_t budget = kDefaultChargeBudget) {
    ChargeBalanceResult result;
    if (c.empty()) return result;
    detail::ChargeSearch search(c, table);
    result.determined = search.walk(budget, [&](const OxidationAssignment& a) {
        result.assignments.push_back(a);
        return true;
    });
    if (!result.determined) result.assignments.clear();
    return result;
}

/// Existence-only variant; cheaper than full enumeration.
inline ChargeFeasibility charge_feasibility(
    const Composition& c, const ElementTable& table = builtin_elements(),
    std::uint64_t budget = kDefaultChargeBudget) {
    if (c.empty()) return ChargeFeasibility::kUnbalanced;
    detail::ChargeSearch search(c, table);
    bool found = false;
    bool completed = search.walk(budget, [&](const OxidationAssignment&) {
        found = true;
        return false;  // stop at first hit
    });
    if (found) return ChargeFeasibility::kBalanced;
    return completed ? ChargeFeasibility::kUnbalanced
                     : ChargeFeasibility::kUndetermined;
}

}  // namespace synthrank
