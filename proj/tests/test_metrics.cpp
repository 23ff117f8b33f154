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

#include <algorithm>
#include <random>

#include "synthrank/metrics.hpp"

using namespace synthrank;

namespace {

/// O(n^2) pairwise ROC AUC oracle.
double oracle_roc(const std::vector<double>& s, const std::vector<int>& y) {
    double num = 0.0;
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (y[i] != 1 || y[j] != 0) continue;
            ++pairs;
            if (s[i] > s[j])
                num += 1.0;
            else if (s[i] == s[j])
                num += 0.5;
        }
    return num / double(pairs);
}

/// Exhaustive descending-threshold AUPRC oracle, recomputing the
/// confusion table from scratch at every distinct score.
double oracle_auprc(const std::vector<double>& s, const std::vector<int>& y) {
    std::vector<double> thresholds = s;
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    std::uint64_t n_pos = 0;
    for (int v : y) n_pos += v;
    double area = 0.0, prev_recall = 0.0;
    for (double t : thresholds) {
        std::uint64_t tp = 0, fp = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] >= t) y[i] == 1 ? ++tp : ++fp;
        }
        double recall = double(tp) / double(n_pos);
        double precision = double(tp) / double(tp + fp);
        area += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return area;
}

/// Exhaustive scan over every candidate threshold.
double oracle_best_f1(const std::vector<double>& s, const std::vector<int>& y) {
    std::vector<double> cands = s;
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<double> taus;
    taus.push_back(cands.front() - 1.0);
    for (std::size_t i = 0; i + 1 < cands.size(); ++i)
        taus.push_back(0.5 * (cands[i] + cands[i + 1]));
    taus.push_back(cands.back() + 1.0);
    double best = 0.0;
    for (double t : taus) {
        ConfusionCounts c;
        for (std::size_t i = 0; i < s.size(); ++i) {
            bool p = s[i] >= t;
            if (y[i] == 1)
                p ? ++c.tp : ++c.fn;
            else
                p ? ++c.fp : ++c.tn;
        }
        best = std::max(best, precision_recall_f1(c).f1);
    }
    return best;
}

}  // namespace

TEST_CASE("confusion counts") {
    auto c = confusion({1, 0, 1, 0}, {1, 1, 1, 0});
    CHECK(c.tp == 2);
    CHECK(c.fp == 1);
    CHECK(c.tn == 1);
    CHECK(c.fn == 0);
    CHECK(c.total() == 4);

    auto perfect = confusion({1, 0, 1}, {1, 0, 1});
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);

    auto inverted = confusion({1, 0, 1}, {0, 1, 0});
    CHECK(inverted.tp == 0);
    CHECK(inverted.tn == 0);

    CHECK_THROWS_AS(confusion({1, 0}, {1}), ValueError);
    CHECK_THROWS_AS(confusion({2, 0}, {1, 0}), ValueError);
}

TEST_CASE("precision/recall/F1: examples and identities") {
    auto r = precision_recall_f1({2, 1, 0, 1});
    CHECK_THAT(r.precision, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));
    CHECK_THAT(r.recall, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));
    CHECK_THAT(r.f1, Catch::Matchers::WithinRel(2.0 / 3.0, 1e-12));

    auto undef = precision_recall_f1({0, 0, 5, 2});
    CHECK(undef.precision == 0.0);
    CHECK_FALSE(undef.precision_defined);

    auto perfect = precision_recall_f1({5, 0, 5, 0});
    CHECK(perfect.precision == 1.0);
    CHECK(perfect.recall == 1.0);
    CHECK(perfect.f1 == 1.0);

    // F1 (P + R) = 2 P R on random counts
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> u(0, 50);
    for (int t = 0; t < 10000; ++t) {
        ConfusionCounts c{(std::uint64_t)u(rng), (std::uint64_t)u(rng),
                          (std::uint64_t)u(rng), (std::uint64_t)u(rng)};
        auto m = precision_recall_f1(c);
        if (m.f1_defined)
            CHECK_THAT(m.f1 * (m.precision + m.recall),
                       Catch::Matchers::WithinAbs(2 * m.precision * m.recall, 1e-12));
    }
}

TEST_CASE("ROC AUC: examples") {
    CHECK(roc_auc({0.9, 0.1}, {1, 0}) == 1.0);
    CHECK_THAT(roc_auc({0.8, 0.7, 0.6, 0.5}, {1, 0, 1, 0}),
               Catch::Matchers::WithinAbs(0.75, 1e-12));
    CHECK_THAT(roc_auc({0.4, 0.4, 0.4, 0.4}, {1, 0, 1, 0}),
               Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK_THROWS_AS(roc_auc({0.5, 0.6}, {1, 1}), ValueError);
}

TEST_CASE("ROC AUC: oracle equality, transform invariance, complement") {
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> quant(1, 8);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 2 + t * 16 % 1000;
        std::vector<double> s(n);
        std::vector<int> y(n);
        bool ties = t % 2 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = ties ? quant(rng) / 8.0 : u(rng);
            y[i] = u(rng) < 0.4 ? 1 : 0;
        }
        y[0] = 1;
        y[1] = 0;
        double auc = roc_auc(s, y);
        CHECK_THAT(auc, Catch::Matchers::WithinAbs(oracle_roc(s, y), 1e-12));

        // strictly increasing transform leaves AUC unchanged
        std::vector<double> ts(n);
        for (std::size_t i = 0; i < n; ++i) ts[i] = std::exp(3.0 * s[i]) + 7.0;
        CHECK_THAT(roc_auc(ts, y), Catch::Matchers::WithinAbs(auc, 1e-12));

        // complement identity needs tie-free scores
        if (!ties) {
            std::vector<int> ny(n);
            for (std::size_t i = 0; i < n; ++i) ny[i] = 1 - y[i];
            CHECK_THAT(roc_auc(s, y) + roc_auc(s, ny),
                       Catch::Matchers::WithinAbs(1.0, 1e-12));
        }
    }
}

TEST_CASE("AUPRC: examples and oracle equality") {
    CHECK_THAT(auprc({0.9, 0.1}, {1, 0}), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(auprc({0.9, 0.8, 0.7}, {0, 1, 0}),
               Catch::Matchers::WithinAbs(oracle_auprc({0.9, 0.8, 0.7}, {0, 1, 0}),
                                          1e-12));
    // constant classifier: area equals the positive rate
    CHECK_THAT(auprc({0.3, 0.3, 0.3, 0.3, 0.3}, {1, 0, 0, 1, 0}),
               Catch::Matchers::WithinAbs(0.4, 1e-12));
    CHECK_THROWS_AS(auprc({0.5, 0.6}, {0, 0}), ValueError);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> quant(1, 6);
    for (int t = 0; t < 60; ++t) {
        std::size_t n = 2 + (t * 37) % 1000;
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = t % 2 ? u(rng) : quant(rng) / 6.0;
            y[i] = u(rng) < 0.3 ? 1 : 0;
        }
        y[0] = 1;
        CHECK_THAT(auprc(s, y), Catch::Matchers::WithinAbs(oracle_auprc(s, y), 1e-12));
    }
}

TEST_CASE("threshold calibration: examples") {
    auto r = calibrate_threshold({0.9, 0.8, 0.4, 0.2}, {1, 0, 1, 0});
    CHECK_THAT(r.threshold, Catch::Matchers::WithinAbs(0.3, 1e-12));
    CHECK_THAT(r.f1, Catch::Matchers::WithinAbs(0.8, 1e-12));

    // perfectly separated: gap midpoint, F1 = 1
    auto sep = calibrate_threshold({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0});
    CHECK_THAT(sep.threshold, Catch::Matchers::WithinAbs(0.5, 1e-12));
    CHECK(sep.f1 == 1.0);

    // anti-separated: all-positive prediction is the best available
    auto anti = calibrate_threshold({0.1, 0.2, 0.8, 0.9}, {1, 1, 0, 0});
    ConfusionCounts all_pos{2, 2, 0, 0};
    CHECK_THAT(anti.f1,
               Catch::Matchers::WithinAbs(precision_recall_f1(all_pos).f1, 1e-12));

    CHECK_THROWS_AS(calibrate_threshold({0.5, 0.6}, {1, 1}), ValueError);
}

TEST_CASE("threshold calibration equals exhaustive scan on random sets") {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> quant(1, 10);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 2 + (t * 11) % 200;
        std::vector<double> s(n);
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = t % 3 ? u(rng) : quant(rng) / 10.0;
            y[i] = u(rng) < 0.5 ? 1 : 0;
        }
        y[0] = 1;
        y[1] = 0;
        auto r = calibrate_threshold(s, y);
        CHECK_THAT(r.f1, Catch::Matchers::WithinAbs(oracle_best_f1(s, y), 1e-12));
    }
}

TEST_CASE("hull baseline: inclusive 50 meV/atom boundary") {
    CHECK(hull_baseline(0.000) == 1);
    CHECK(hull_baseline(0.049) == 1);
    CHECK(hull_baseline(0.050) == 1);
    CHECK(hull_baseline(0.051) == 0);
    CHECK(hull_baseline(-5e-7) == 1);  // DFT noise clamps to zero
    CHECK_THROWS_AS(hull_baseline(-0.01), ValueError);
    CHECK_THROWS_AS(hull_baseline(std::nan("")), ValueError);
}

TEST_CASE("polymorph labeling rule") {
    auto entry = [](const char* formula, bool theo) {
        LabeledEntry e;
        e.composition = parse_formula(formula);
        e.theoretical = theo;
        return e;
    };
    auto labels = label_compositions({entry("TiO2", true), entry("Ti2O4", true),
                                      entry("Fe2O3", true), entry("Fe4O6", false),
                                      entry("NaCl", false)});
    CHECK(labels.at("TiO2") == 0);    // all polymorphs theoretical
    CHECK(labels.at("Fe2O3") == 1);   // one experimental polymorph
    CHECK(labels.at("NaCl") == 1);    // single experimental entry
    CHECK(labels.size() == 3);
    CHECK_THROWS_AS(label_compositions({}), ValueError);
}

TEST_CASE("labeling is order- and duplication-invariant") {
    std::mt19937 rng(6);
    const std::vector<std::string> formulas = {"TiO2", "Fe2O3", "NaCl", "MgO",
                                               "BaTiO3"};
    std::uniform_int_distribution<int> theo(0, 1);
    std::uniform_int_distribution<std::size_t> pick(0, formulas.size() - 1);
    for (int t = 0; t < 200; ++t) {
        std::vector<LabeledEntry> entries;
        int n = 3 + t % 10;
        for (int i = 0; i < n; ++i) {
            LabeledEntry e;
            e.composition = parse_formula(formulas[pick(rng)]);
            e.theoretical = theo(rng) == 1;
            entries.push_back(e);
        }
        auto base = label_compositions(entries);
        std::shuffle(entries.begin(), entries.end(), rng);
        CHECK(label_compositions(entries) == base);
        // duplicating an entry never changes the result
        entries.push_back(entries.front());
        CHECK(label_compositions(entries) == base);
    }
}

TEST_CASE("stratified split is deterministic and stratified") {
    std::vector<int> labels(1000);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i % 5 == 0;
    auto a = stratified_split(labels, 0.8, 0.1, 42);
    auto b = stratified_split(labels, 0.8, 0.1, 42);
    CHECK(a.train == b.train);
    CHECK(a.val == b.val);
    CHECK(a.test == b.test);
    CHECK(a.train.size() + a.val.size() + a.test.size() == labels.size());

    auto count_pos = [&](const std::vector<std::size_t>& idx) {
        std::size_t n = 0;
        for (auto i : idx) n += labels[i];
        return n;
    };
    // 200 positives split 80/10/10
    CHECK(count_pos(a.train) == 160);
    CHECK(count_pos(a.val) == 20);
    CHECK(count_pos(a.test) == 20);

    auto c = stratified_split(labels, 0.8, 0.1, 43);
    CHECK(a.train != c.train);  // seed matters
    CHECK_THROWS_AS(stratified_split(labels, 0.9, 0.2, 1), ValueError);
}

TEST_CASE("evaluate_model wires calibration and metrics together") {
    std::vector<double> s = {0.9, 0.8, 0.4, 0.2};
    std::vector<int> y = {1, 0, 1, 0};
    auto r = evaluate_model("toy", s, y);
    CHECK(r.model == "toy");
    CHECK_THAT(r.f1, Catch::Matchers::WithinAbs(0.8, 1e-12));
    CHECK_THAT(r.roc, Catch::Matchers::WithinAbs(0.75, 1e-12));
    CHECK(r.threshold > 0.2);
    CHECK(r.threshold <= 0.4);
}
