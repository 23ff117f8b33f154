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
/// Binary classification metrics for positive-unlabeled evaluation:
/// confusion counts, precision/recall/F1, ROC AUC, AUPRC, F1-optimal
/// threshold calibration, the hull-energy baseline, and the polymorph
/// labeling rule.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "synthrank/composition.hpp"
#include "synthrank/errors.hpp"

namespace synthrank {

struct ConfusionCounts {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    std::uint64_t total() const { return tp + fp + tn + fn; }
};

inline ConfusionCounts confusion(const std::vector<int>& labels,
                                 const std::vector<int>& predictions) {
    if (labels.size() != predictions.size())
        throw ValueError("confusion: label/prediction length mismatch");
    ConfusionCounts c;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1)
            throw ValueError("confusion: labels must be 0/1");
        if (predictions[i] != 0 && predictions[i] != 1)
            throw ValueError("confusion: predictions must be 0/1");
        if (labels[i] == 1)
            predictions[i] == 1 ? ++c.tp : ++c.fn;
        else
            predictions[i] == 1 ? ++c.fp : ++c.tn;
    }
    return c;
}

/// Zero-denominator cases report value 0 with the matching flag cleared.
struct PrfResult {
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    bool precision_defined = true, recall_defined = true, f1_defined = true;
};

inline PrfResult precision_recall_f1(const ConfusionCounts& c) {
    PrfResult r;
    if (c.tp + c.fp == 0) {
        r.precision_defined = false;
    } else {
        r.precision = double(c.tp) / double(c.tp + c.fp);
    }
    if (c.tp + c.fn == 0) {
        r.recall_defined = false;
    } else {
        r.recall = double(c.tp) / double(c.tp + c.fn);
    }
    if (!r.precision_defined || !r.recall_defined || r.precision + r.recall == 0.0) {
        r.f1_defined = false;
        r.f1 = 0.0;
    } else {
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    }
    return r;
}

namespace detail {

inline void check_binary_scores(const std::vector<double>& scores,
                                const std::vector<int>& labels,
                                const char* what) {
    if (scores.size() != labels.size())
        throw ValueError(std::string(what) + ": score/label length mismatch");
    if (scores.empty()) throw ValueError(std::string(what) + ": empty input");
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!std::isfinite(scores[i]))
            throw ValueError(std::string(what) + ": non-finite score");
        if (labels[i] != 0 && labels[i] != 1)
            throw ValueError(std::string(what) + ": labels must be 0/1");
    }
}

}  // namespace detail

/// Mann-Whitney statistic: P(s_pos > s_neg) + 1/2 P(s_pos = s_neg),
/// computed with midranks in O(n log n).
inline double roc_auc(const std::vector<double>& scores,
                      const std::vector<int>& labels) {
    detail::check_binary_scores(scores, labels, "roc_auc");
    std::size_t n = scores.size();
    std::uint64_t n_pos = 0;
    for (int y : labels) n_pos += y;
    std::uint64_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw ValueError("roc_auc: both classes must be present");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * double(i + 1 + j);  // average of ranks i+1..j
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]] == 1) rank_sum_pos += midrank;
        i = j;
    }
    return (rank_sum_pos - 0.5 * double(n_pos) * double(n_pos + 1)) /
           (double(n_pos) * double(n_neg));
}

/// Area under precision-recall: step-interpolated sum over a
/// descending-score threshold sweep, ties processed as one step.
inline double auprc(const std::vector<double>& scores,
                    const std::vector<int>& labels) {
    detail::check_binary_scores(scores, labels, "auprc");
    std::size_t n = scores.size();
    std::uint64_t n_pos = 0;
    for (int y : labels) n_pos += y;
    if (n_pos == 0) throw ValueError("auprc: no positive labels");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    double area = 0.0;
    double prev_recall = 0.0;
    std::uint64_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        for (std::size_t k = i; k < j; ++k)
            labels[order[k]] == 1 ? ++tp : ++fp;
        double recall = double(tp) / double(n_pos);
        double precision = double(tp) / double(tp + fp);
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return area;
}

struct ThresholdResult {
    double threshold = 0.0;
    double f1 = 0.0;
};

/// F1-maximizing threshold. Candidates are the midpoints between
/// consecutive distinct sorted scores plus below-min / above-max
/// sentinels; F1 ties resolve toward the higher threshold. Predictions
/// are score >= threshold.
inline ThresholdResult calibrate_threshold(const std::vector<double>& scores,
                                           const std::vector<int>& labels) {
    detail::check_binary_scores(scores, labels, "calibrate_threshold");
    std::uint64_t n_pos = 0;
    for (int y : labels) n_pos += y;
    if (n_pos == 0 || n_pos == labels.size())
        throw ValueError("calibrate_threshold: both classes must be present");

    std::vector<double> distinct = scores;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<double> candidates;
    candidates.push_back(distinct.front() - 0.5);  // predict everything positive
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
        candidates.push_back(0.5 * (distinct[i] + distinct[i + 1]));
    candidates.push_back(distinct.back() + 0.5);  // predict everything negative

    ThresholdResult best;
    bool first = true;
    for (double tau : candidates) {
        ConfusionCounts c;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            bool pred = scores[i] >= tau;
            if (labels[i] == 1)
                pred ? ++c.tp : ++c.fn;
            else
                pred ? ++c.fp : ++c.tn;
        }
        double f1 = precision_recall_f1(c).f1;
        if (first || f1 > best.f1 || (f1 == best.f1 && tau > best.threshold)) {
            best = {tau, f1};
            first = false;
        }
    }
    return best;
}

/// Hull-energy classifier: synthesizable iff e_hull <= 0.050 eV/atom
/// (inclusive). Values in [-1e-6, 0) are treated as DFT noise and
/// clamped to zero; anything lower is rejected.
inline constexpr double kHullThresholdEv = 0.050;

inline int hull_baseline(double e_hull_ev_per_atom) {
    if (std::isnan(e_hull_ev_per_atom))
        throw ValueError("hull_baseline: missing hull energy");
    if (e_hull_ev_per_atom < -1e-6)
        throw ValueError("hull_baseline: negative hull energy beyond noise");
    double e = e_hull_ev_per_atom < 0 ? 0.0 : e_hull_ev_per_atom;
    return e <= kHullThresholdEv ? 1 : 0;
}

/// One database entry prior to label curation.
struct LabeledEntry {
    std::string id;
    Composition composition;
    bool theoretical = false;
    double e_above_hull = std::numeric_limits<double>::quiet_NaN();
    std::string source;

    bool has_hull_energy() const { return !std::isnan(e_above_hull); }
};

/// Groups entries by reduced composition. A composition is labeled 0
/// iff every one of its polymorphs is theoretical, 1 otherwise.
inline std::map<std::string, int> label_compositions(
    const std::vector<LabeledEntry>& entries) {
    if (entries.empty()) throw ValueError("label_compositions: empty input");
    std::map<std::string, int> labels;
    for (const auto& e : entries) {
        auto [red, mult] = reduce(e.composition);
        std::string key = format_formula(red);
        int& y = labels.try_emplace(key, 0).first->second;
        if (!e.theoretical) y = 1;
    }
    return labels;
}

struct SplitIndices {
    std::vector<std::size_t> train, val, test;
};

/// Label-stratified train/val/test split; deterministic under (seed,
/// ratios, labels). Indices are sorted within each split.
inline SplitIndices stratified_split(const std::vector<int>& labels,
                                     double train_frac = 0.8,
                                     double val_frac = 0.1,
                                     std::uint64_t seed = 0) {
    if (train_frac < 0 || val_frac < 0 || train_frac + val_frac > 1.0)
        throw ValueError("stratified_split: bad fractions");
    SplitIndices out;
    for (int cls : {0, 1}) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == cls) idx.push_back(i);
        std::mt19937_64 rng(seed * 2 + cls);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::size_t n = idx.size();
        std::size_t n_train = static_cast<std::size_t>(train_frac * n);
        std::size_t n_val = static_cast<std::size_t>(val_frac * n);
        for (std::size_t k = 0; k < n; ++k) {
            if (k < n_train)
                out.train.push_back(idx[k]);
            else if (k < n_train + n_val)
                out.val.push_back(idx[k]);
            else
                out.test.push_back(idx[k]);
        }
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.val.begin(), out.val.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

/// Aggregate report for one model's predictions.
struct MetricReport {
    std::string model;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    double roc = 0.0, pr_auc = 0.0;
    double threshold = 0.0;
    bool precision_defined = true, recall_defined = true, f1_defined = true;
};

/// Calibrates the threshold on the given scores, then evaluates every
/// metric at it.
inline MetricReport evaluate_model(const std::string& name,
                                   const std::vector<double>& scores,
                                   const std::vector<int>& labels) {
    MetricReport r;
    r.model = name;
    auto cal = calibrate_threshold(scores, labels);
    r.threshold = cal.threshold;
    std::vector<int> preds(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i)
        preds[i] = scores[i] >= cal.threshold ? 1 : 0;
    auto prf = precision_recall_f1(confusion(labels, preds));
    r.precision = prf.precision;
    r.recall = prf.recall;
    r.f1 = prf.f1;
    r.precision_defined = prf.precision_defined;
    r.recall_defined = prf.recall_defined;
    r.f1_defined = prf.f1_defined;
    r.roc = roc_auc(scores, labels);
    r.pr_auc = auprc(scores, labels);
    return r;
}

}  // namespace synthrank
