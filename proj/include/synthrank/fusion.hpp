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
/// Rank-average (Borda) fusion of per-model probabilities.
///
/// For model m and candidate i, rank_m(i) = 1 + #{j : s_m(j) < s_m(i)}
/// (strict inequality, so ties share the lowest rank of their group), and
/// the fused score is the mean of rank_m(i) / N over models. The fused
/// value lies in [1/N, 1] and is invariant under any strictly increasing
/// transform of a model's score column.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "synthrank/errors.hpp"

namespace synthrank {

/// Per-candidate model scores. Absent scores are NaN; fusion requires
/// every model column to be fully populated.
struct ScoreVector {
    std::string id;
    double s_c = std::numeric_limits<double>::quiet_NaN();
    double s_s = std::numeric_limits<double>::quiet_NaN();

    bool has_c() const { return !std::isnan(s_c); }
    bool has_s() const { return !std::isnan(s_s); }
};

struct RankRow {
    std::string id;
    double s_c = 0.0, s_s = 0.0;
    std::uint32_t rank_c = 0, rank_s = 0;  // in [1, N]
    double rank_avg = 0.0;                 // in [1/N, 1]
};

struct RankTable {
    std::vector<RankRow> rows;  // in input order
    std::size_t size() const { return rows.size(); }
};

namespace detail {

/// rank(i) = 1 + #(strictly smaller scores), computed by one sort.
inline std::vector<std::uint32_t> competition_ranks(const std::vector<double>& scores) {
    std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    std::vector<std::uint32_t> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k)
            ranks[order[k]] = static_cast<std::uint32_t>(i + 1);
        i = j;
    }
    return ranks;
}

}  // namespace detail

/// Fuses two model score columns into the rank table. Every candidate
/// must carry both scores; NaN scores are rejected.
inline RankTable rank_average(const std::vector<ScoreVector>& scores) {
    if (scores.empty()) throw ValueError("rank_average: empty score list");
    std::size_t n = scores.size();
    std::vector<double> col_c(n), col_s(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!scores[i].has_c() || !scores[i].has_s())
            throw ValueError("rank_average: candidate " + scores[i].id +
                             " is missing a model score");
        col_c[i] = scores[i].s_c;
        col_s[i] = scores[i].s_s;
    }
    auto ranks_c = detail::competition_ranks(col_c);
    auto ranks_s = detail::competition_ranks(col_s);
    RankTable table;
    table.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        RankRow& r = table.rows[i];
        r.id = scores[i].id;
        r.s_c = col_c[i];
        r.s_s = col_s[i];
        r.rank_c = ranks_c[i];
        r.rank_s = ranks_s[i];
        r.rank_avg = (double(r.rank_c) + double(r.rank_s)) / (2.0 * double(n));
    }
    return table;
}

/// Single-model variant (composition-only screening mode).
inline RankTable rank_average_single(const std::vector<ScoreVector>& scores) {
    if (scores.empty()) throw ValueError("rank_average: empty score list");
    std::size_t n = scores.size();
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!scores[i].has_c())
            throw ValueError("rank_average: candidate " + scores[i].id +
                             " is missing the composition score");
        col[i] = scores[i].s_c;
    }
    auto ranks = detail::competition_ranks(col);
    RankTable table;
    table.rows.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        RankRow& r = table.rows[i];
        r.id = scores[i].id;
        r.s_c = col[i];
        r.s_s = std::numeric_limits<double>::quiet_NaN();
        r.rank_c = ranks[i];
        r.rank_s = 0;
        r.rank_avg = double(r.rank_c) / double(n);
    }
    return table;
}

/// Candidates with rank_avg >= tau, ordered by descending rank_avg and
/// ascending id within ties.
inline std::vector<std::string> rank_threshold_select(const RankTable& table,
                                                      double tau) {
    std::vector<const RankRow*> picked;
    for (const auto& row : table.rows)
        if (row.rank_avg >= tau) picked.push_back(&row);
    std::sort(picked.begin(), picked.end(), [](const RankRow* a, const RankRow* b) {
        if (a->rank_avg != b->rank_avg) return a->rank_avg > b->rank_avg;
        return a->id < b->id;
    });
    std::vector<std::string> ids;
    ids.reserve(picked.size());
    for (const auto* row : picked) ids.push_back(row->id);
    return ids;
}

}  // namespace synthrank
