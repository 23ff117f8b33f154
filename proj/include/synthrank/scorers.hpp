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
/// Interchangeable synthesizability scorers producing probabilities in
/// [0,1]: rule-based heuristics, trained logistic models, and replayed
/// score files.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>

#include "synthrank/composition.hpp"
#include "synthrank/descriptors.hpp"
#include "synthrank/errors.hpp"
#include "synthrank/logistic.hpp"
#include "synthrank/oxidation.hpp"
#include "synthrank/structure.hpp"

namespace synthrank {

/// View of one candidate handed to a scorer. `structure` may be null;
/// scorers that need it must throw a descriptive error.
struct ScoreRequest {
    const std::string& id;
    const Composition& composition;
    const CrystalStructure* structure = nullptr;
};

class Scorer {
public:
    virtual ~Scorer() = default;
    virtual std::string name() const = 0;
    /// Probability in [0,1]; throws Error on per-candidate failure.
    virtual double score(const ScoreRequest& req) const = 0;
};

struct HeuristicCompositionConfig {
    std::uint64_t charge_budget = kDefaultChargeBudget;
    double weight_charge = 0.5;
    double weight_size = 0.3;
    double weight_spread = 0.2;
    int size_penalty_start = 5;       // elements beyond this are penalized
    double size_penalty_slope = 0.15;
    double spread_penalty_start = 3.0;  // electronegativity spread
};

/// Rule score over composition chemistry: charge balance dominates,
/// large element counts and extreme electronegativity spreads are
/// penalized. An exhausted charge search contributes the neutral 0.5.
inline double heuristic_composition_score(
    const Composition& c, const ElementTable& table = builtin_elements(),
    const HeuristicCompositionConfig& config = {}) {
    if (c.empty()) throw ValueError("cannot score empty composition");
    double charge_term = 0.5;
    switch (charge_feasibility(c, table, config.charge_budget)) {
        case ChargeFeasibility::kBalanced: charge_term = 1.0; break;
        case ChargeFeasibility::kUnbalanced: charge_term = 0.0; break;
        case ChargeFeasibility::kUndetermined: charge_term = 0.5; break;
    }

    double over = double(c.n_elements()) - double(config.size_penalty_start);
    double size_term = 1.0 - config.size_penalty_slope * std::max(0.0, over);
    size_term = std::clamp(size_term, 0.0, 1.0);

    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& [sym, amt] : c.counts()) {
        const auto& e = table.get(sym);
        if (!e.has_electronegativity())
            throw ValueError("missing electronegativity for element " + sym);
        if (first) {
            lo = hi = e.electronegativity;
            first = false;
        } else {
            lo = std::min(lo, e.electronegativity);
            hi = std::max(hi, e.electronegativity);
        }
    }
    double spread_term =
        std::clamp(1.0 - std::max(0.0, (hi - lo) - config.spread_penalty_start),
                   0.0, 1.0);

    double score = config.weight_charge * charge_term +
                   config.weight_size * size_term +
                   config.weight_spread * spread_term;
    return std::clamp(score, 0.0, 1.0);
}

struct HeuristicStructureConfig {
    StructureDescriptorConfig descriptors;
    double weight_coordination = 0.5;
    double weight_mean_cn = 0.3;
    double weight_polar = 0.2;
    double cn_saturation = 6.0;  // octahedral coordination scores full marks
};

/// Rule score over local geometry: clashing structures score zero,
/// under-coordinated networks are penalized, polar (anion-cation)
/// connectivity is rewarded. Adding an isolated atom can only lower it.
inline double heuristic_structure_score(const CrystalStructure& s,
                                        const ElementTable& table = builtin_elements(),
                                        const HeuristicStructureConfig& config = {}) {
    DescriptorVector d = structure_descriptors(s, table, config.descriptors);
    if (d.at("min_distance") < config.descriptors.clash_threshold) return 0.0;
    double coord_term = 1.0 - d.at("undercoordinated_fraction");
    double cn_term = std::min(d.at("mean_cn"), config.cn_saturation) /
                     config.cn_saturation;
    double polar_term = d.at("polar_connectivity");
    double score = config.weight_coordination * coord_term +
                   config.weight_mean_cn * cn_term +
                   config.weight_polar * polar_term;
    return std::clamp(score, 0.0, 1.0);
}

class HeuristicCompositionScorer final : public Scorer {
public:
    explicit HeuristicCompositionScorer(const ElementTable& table = builtin_elements(),
                                        HeuristicCompositionConfig config = {})
        : table_(table), config_(config) {}
    std::string name() const override { return "heuristic-composition"; }
    double score(const ScoreRequest& req) const override {
        return heuristic_composition_score(req.composition, table_, config_);
    }

private:
    const ElementTable& table_;
    HeuristicCompositionConfig config_;
};

class HeuristicStructureScorer final : public Scorer {
public:
    explicit HeuristicStructureScorer(const ElementTable& table = builtin_elements(),
                                      HeuristicStructureConfig config = {})
        : table_(table), config_(config) {}
    std::string name() const override { return "heuristic-structure"; }
    double score(const ScoreRequest& req) const override {
        if (!req.structure)
            throw ValueError("candidate " + req.id + " has no structure");
        return heuristic_structure_score(*req.structure, table_, config_);
    }

private:
    const ElementTable& table_;
    HeuristicStructureConfig config_;
};

class LogisticCompositionScorer final : public Scorer {
public:
    LogisticCompositionScorer(LogisticModel model,
                              const ElementTable& table = builtin_elements())
        : model_(std::move(model)), table_(table) {
        if (model_.schema_id != comp_descriptor_schema().id)
            throw ValueError("logistic composition scorer needs schema " +
                             comp_descriptor_schema().id);
    }
    std::string name() const override { return "logistic-composition"; }
    double score(const ScoreRequest& req) const override {
        return predict(model_, composition_descriptors(req.composition, table_));
    }

private:
    LogisticModel model_;
    const ElementTable& table_;
};

class LogisticStructureScorer final : public Scorer {
public:
    LogisticStructureScorer(LogisticModel model,
                            const ElementTable& table = builtin_elements(),
                            StructureDescriptorConfig config = {})
        : model_(std::move(model)), table_(table), config_(config) {
        if (model_.schema_id != structure_descriptor_schema().id)
            throw ValueError("logistic structure scorer needs schema " +
                             structure_descriptor_schema().id);
    }
    std::string name() const override { return "logistic-structure"; }
    double score(const ScoreRequest& req) const override {
        if (!req.structure)
            throw ValueError("candidate " + req.id + " has no structure");
        return predict(model_, structure_descriptors(*req.structure, table_, config_));
    }

private:
    LogisticModel model_;
    const ElementTable& table_;
    StructureDescriptorConfig config_;
};

/// Replays externally produced probabilities from a score file:
///   id,probability      (header line required)
class FileScorer final : public Scorer {
public:
    FileScorer(std::unordered_map<std::string, double> scores, std::string label)
        : scores_(std::move(scores)), label_(std::move(label)) {
        for (const auto& [id, p] : scores_)
            if (!(p >= 0.0 && p <= 1.0))
                throw ValueError("score outside [0,1] for id " + id);
    }

    static FileScorer load(const std::string& path,
                           const std::string& label = "file") {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open score file: " + path);
        std::string line;
        if (!std::getline(in, line))
            throw ParseError("empty score file: " + path);
        // header: "id,probability" (any header text accepted)
        std::unordered_map<std::string, double> scores;
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto comma = line.find(',');
            if (comma == std::string::npos)
                throw ParseError("missing comma at line " + std::to_string(lineno) +
                                 " of " + path);
            std::string id = line.substr(0, comma);
            // tolerate spaces around the probability field
            std::istringstream vs(line.substr(comma + 1));
            double p = 0.0;
            if (!(vs >> p))
                throw ParseError("bad probability at line " + std::to_string(lineno) +
                                 " of " + path);
            if (!(p >= 0.0 && p <= 1.0))
                throw ValueError("probability outside [0,1] at line " +
                                 std::to_string(lineno) + " of " + path);
            if (!scores.emplace(id, p).second)
                throw ValueError("duplicate id in score file: " + id);
        }
        return FileScorer(std::move(scores), label);
    }

    std::string name() const override { return label_; }

    double score(const ScoreRequest& req) const override {
        auto it = scores_.find(req.id);
        if (it == scores_.end())
            throw ValueError("no score for id " + req.id + " in " + label_);
        return it->second;
    }

    std::size_t size() const { return scores_.size(); }

private:
    std::unordered_map<std::string, double> scores_;
    std::string label_;
};

}  // namespace synthrank
