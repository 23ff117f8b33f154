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
/// Engineered composition and structure descriptors. Each descriptor
/// family carries a versioned schema so models cannot silently be fed
/// features they were not trained on.

#include <cmath>
#include <string>
#include <vector>

#include "synthrank/composition.hpp"
#include "synthrank/errors.hpp"
#include "synthrank/oxidation.hpp"
#include "synthrank/structure.hpp"

namespace synthrank {

struct DescriptorSchema {
    std::string id;
    std::vector<std::string> names;

    DescriptorSchema(std::string schema_id, std::vector<std::string> feature_names)
        : id(std::move(schema_id)), names(std::move(feature_names)) {
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw ValueError("duplicate feature name: " + names[i]);
    }

    std::size_t dimension() const { return names.size(); }
};

class DescriptorVector {
public:
    DescriptorVector(const DescriptorSchema& schema, std::vector<double> values)
        : schema_(&schema), values_(std::move(values)) {
        if (values_.size() != schema.dimension())
            throw ValueError("descriptor dimension mismatch for schema " + schema.id);
        for (double v : values_)
            if (!std::isfinite(v))
                throw ValueError("non-finite descriptor value in schema " + schema.id);
    }

    const DescriptorSchema& schema() const { return *schema_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    double at(const std::string& name) const {
        for (std::size_t i = 0; i < schema_->names.size(); ++i)
            if (schema_->names[i] == name) return values_[i];
        throw ValueError("no feature named " + name + " in schema " + schema_->id);
    }

private:
    const DescriptorSchema* schema_;
    std::vector<double> values_;
};

/// Composition schema: element count, charge-balance flag, then
/// fraction-weighted mean/std plus min/max for six element properties.
inline const DescriptorSchema& comp_descriptor_schema() {
    static const DescriptorSchema schema = [] {
        std::vector<std::string> names = {"n_elements", "charge_balanced"};
        for (const char* prop : {"z", "electronegativity", "radius", "group",
                                 "row", "mass"})
            for (const char* stat : {"mean", "std", "min", "max"})
                names.push_back(std::string(prop) + "_" + stat);
        return DescriptorSchema("comp-v1", std::move(names));
    }();
    return schema;
}

struct CompositionDescriptorConfig {
    std::uint64_t charge_budget = kDefaultChargeBudget;
};

/// Deterministic composition descriptors. Throws on missing element
/// properties (electronegativity or oxidation states).
inline DescriptorVector composition_descriptors(
    const Composition& c, const ElementTable& table = builtin_elements(),
    const CompositionDescriptorConfig& config = {}) {
    if (c.empty()) throw ValueError("descriptors of empty composition");
    double total = c.total_atoms().to_double();

    std::vector<double> fractions;
    std::vector<const ElementData*> elems;
    for (const auto& [sym, amt] : c.counts()) {
        const auto& e = table.get(sym);
        if (!e.has_electronegativity())
            throw ValueError("missing electronegativity for element " + sym);
        elems.push_back(&e);
        fractions.push_back(amt.to_double() / total);
    }

    double charge = 0.5;
    switch (charge_feasibility(c, table, config.charge_budget)) {
        case ChargeFeasibility::kBalanced: charge = 1.0; break;
        case ChargeFeasibility::kUnbalanced: charge = 0.0; break;
        case ChargeFeasibility::kUndetermined: charge = 0.5; break;
    }

    std::vector<double> values = {double(c.n_elements()), charge};
    auto property = [&](const ElementData& e, int which) {
        switch (which) {
            case 0: return double(e.z);
            case 1: return e.electronegativity;
            case 2: return e.covalent_radius;
            case 3: return double(e.group);
            case 4: return double(e.row);
            default: return e.molar_mass;
        }
    };
    for (int which = 0; which < 6; ++which) {
        double mean = 0.0;
        for (std::size_t i = 0; i < elems.size(); ++i)
            mean += fractions[i] * property(*elems[i], which);
        double var = 0.0;
        double lo = property(*elems[0], which), hi = lo;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            double v = property(*elems[i], which);
            var += fractions[i] * (v - mean) * (v - mean);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        values.push_back(mean);
        values.push_back(std::sqrt(std::max(var, 0.0)));
        values.push_back(lo);
        values.push_back(hi);
    }
    return DescriptorVector(comp_descriptor_schema(), std::move(values));
}

/// Structure schema: coordination statistics, shortest contact, number
/// density, under-coordination fraction, polar-bond connectivity flag.
inline const DescriptorSchema& structure_descriptor_schema() {
    static const DescriptorSchema schema("struct-v1",
                                         {"mean_cn", "min_cn", "min_distance",
                                          "number_density",
                                          "undercoordinated_fraction",
                                          "polar_connectivity"});
    return schema;
}

struct StructureDescriptorConfig {
    enum class Cutoff { kFixed, kAdaptive };
    /// Fixed 2.6 A reproduces the reference coordination numbers for the
    /// standard test cells; adaptive mode bonds pairs within
    /// radius_scale * (r_i + r_j).
    Cutoff cutoff_mode = Cutoff::kFixed;
    double fixed_cutoff = 2.6;       // Angstrom
    double radius_scale = 1.2;
    double clash_threshold = 0.5;    // Angstrom
    /// Minimum electronegativity difference for a contact to count as
    /// anion-cation (polar) connectivity.
    double polar_en_delta = 0.7;
};

inline DescriptorVector structure_descriptors(
    const CrystalStructure& input, const ElementTable& table = builtin_elements(),
    const StructureDescriptorConfig& config = {}) {
    CrystalStructure s = expand_to_p1(input);
    if (s.n_sites() == 0) throw ValueError("descriptors of empty structure");
    const double n = double(s.n_sites());

    double search_cutoff = config.fixed_cutoff;
    if (config.cutoff_mode == StructureDescriptorConfig::Cutoff::kAdaptive) {
        double max_radius = 0.0;
        for (const auto& site : s.sites())
            max_radius = std::max(max_radius, table.get(site.element).covalent_radius);
        search_cutoff = config.radius_scale * 2.0 * max_radius;
    }

    NeighborOptions opts;
    opts.clash_threshold = config.clash_threshold;
    opts.throw_on_clash = false;
    auto pairs = neighbor_list(s, search_cutoff, opts);

    std::vector<int> cn(s.n_sites(), 0);
    bool polar = false;
    for (const auto& p : pairs) {
        double bond_cutoff = config.fixed_cutoff;
        if (config.cutoff_mode == StructureDescriptorConfig::Cutoff::kAdaptive)
            bond_cutoff = config.radius_scale *
                          (table.get(s.sites()[p.i].element).covalent_radius +
                           table.get(s.sites()[p.j].element).covalent_radius);
        if (p.distance > bond_cutoff) continue;
        cn[p.i]++;
        const auto& ei = table.get(s.sites()[p.i].element);
        const auto& ej = table.get(s.sites()[p.j].element);
        if (ei.has_electronegativity() && ej.has_electronegativity() &&
            std::abs(ei.electronegativity - ej.electronegativity) >=
                config.polar_en_delta)
            polar = true;
    }

    double mean_cn = 0.0, min_cn = double(cn[0]), under = 0.0;
    for (int c : cn) {
        mean_cn += c;
        min_cn = std::min(min_cn, double(c));
        if (c < 2) under += 1.0;
    }
    mean_cn /= n;
    under /= n;

    double occ_total = 0.0;
    for (const auto& site : s.sites()) occ_total += site.occupancy.to_double();
    double density = occ_total / s.lattice().volume();

    std::vector<double> values = {mean_cn,
                                  min_cn,
                                  min_interatomic_distance(s),
                                  density,
                                  under,
                                  polar ? 1.0 : 0.0};
    return DescriptorVector(structure_descriptor_schema(), std::move(values));
}

}  // namespace synthrank
