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
/// Crystal structures: occupied sites, symmetry operations on fractional
/// coordinates, P1 expansion, and periodic neighbor analysis.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synthrank/composition.hpp"
#include "synthrank/errors.hpp"
#include "synthrank/lattice.hpp"
#include "synthrank/rational.hpp"

#include <json.hpp>

namespace synthrank {

/// Affine map on fractional coordinates, r' = R r + t. Rotation entries
/// are integers (crystallographic), translations exact rationals.
class SymOp {
public:
    SymOp() {
        for (int i = 0; i < 3; ++i) rot_[i][i] = 1;
    }
    SymOp(const std::array<std::array<int, 3>, 3>& rot,
          const std::array<Rational, 3>& trans)
        : rot_(rot), trans_(trans) {}

    static SymOp identity() { return SymOp(); }

    /// Parses CIF notation: "x, y, z", "-y, x-y, z+1/2", "1/2+x, ...".
    static SymOp parse(const std::string& text) {
        std::array<std::array<int, 3>, 3> rot = {};
        std::array<Rational, 3> trans = {Rational(0), Rational(0), Rational(0)};
        std::size_t start = 0;
        for (int row = 0; row < 3; ++row) {
            std::size_t comma = text.find(',', start);
            if (row < 2 && comma == std::string::npos)
                throw ParseError("symmetry op needs three components: " + text);
            std::string part = text.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            parse_component(part, rot[row], trans[row]);
            start = comma + 1;
        }
        return SymOp(rot, trans);
    }

    Vec3 apply(const Vec3& frac) const {
        Vec3 out;
        for (int i = 0; i < 3; ++i) {
            out[i] = trans_[i].to_double();
            for (int j = 0; j < 3; ++j) out[i] += rot_[i][j] * frac[j];
        }
        return out;
    }

    bool is_identity() const {
        for (int i = 0; i < 3; ++i) {
            if (!trans_[i].is_zero()) return false;
            for (int j = 0; j < 3; ++j)
                if (rot_[i][j] != (i == j ? 1 : 0)) return false;
        }
        return true;
    }

    /// Canonical CIF-style string ("x, y, z").
    std::string str() const {
        static const char* axes = "xyz";
        std::string out;
        for (int i = 0; i < 3; ++i) {
            if (i) out += ", ";
            std::string comp;
            for (int j = 0; j < 3; ++j) {
                int c = rot_[i][j];
                if (c == 0) continue;
                if (c > 0 && !comp.empty()) comp += '+';
                if (c == -1)
                    comp += '-';
                else if (c != 1)
                    comp += std::to_string(c) + "*";
                comp += axes[j];
            }
            if (!trans_[i].is_zero()) {
                if (trans_[i].is_positive() && !comp.empty()) comp += '+';
                comp += trans_[i].str();
            }
            if (comp.empty()) comp = "0";
            out += comp;
        }
        return out;
    }

    const std::array<std::array<int, 3>, 3>& rot() const { return rot_; }
    const std::array<Rational, 3>& trans() const { return trans_; }

private:
    static void parse_component(const std::string& part, std::array<int, 3>& row,
                                Rational& trans) {
        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < part.size() && std::isspace((unsigned char)part[i])) ++i;
        };
        bool any = false;
        skip_ws();
        while (i < part.size()) {
            int sign = 1;
            if (part[i] == '+' || part[i] == '-') {
                sign = part[i] == '-' ? -1 : 1;
                ++i;
                skip_ws();
            }
            if (i >= part.size()) throw ParseError("dangling sign in sym op");
            char c = std::tolower((unsigned char)part[i]);
            if (c == 'x' || c == 'y' || c == 'z') {
                row[c - 'x'] += sign;
                ++i;
            } else if (std::isdigit((unsigned char)part[i])) {
                std::size_t start = i;
                while (i < part.size() &&
                       (std::isdigit((unsigned char)part[i]) || part[i] == '.' ||
                        part[i] == '/'))
                    ++i;
                Rational value =
                    Rational::parse(part.substr(start, i - start));
                skip_ws();
                if (i < part.size() &&
                    (part[i] == '*' ||
                     std::tolower((unsigned char)part[i]) == 'x' ||
                     std::tolower((unsigned char)part[i]) == 'y' ||
                     std::tolower((unsigned char)part[i]) == 'z')) {
                    if (part[i] == '*') {
                        ++i;
                        skip_ws();
                    }
                    if (i >= part.size()) throw ParseError("bad sym op term");
                    char v = std::tolower((unsigned char)part[i]);
                    if (v != 'x' && v != 'y' && v != 'z')
                        throw ParseError("bad sym op variable");
                    if (!value.is_integer())
                        throw ParseError("non-integer rotation coefficient");
                    row[v - 'x'] += sign * static_cast<int>(value.num());
                    ++i;
                } else {
                    trans += sign > 0 ? value : -value;
                }
            } else {
                throw ParseError(std::string("unexpected character '") + part[i] +
                                 "' in sym op");
            }
            any = true;
            skip_ws();
        }
        if (!any) throw ParseError("empty sym op component");
    }

    std::array<std::array<int, 3>, 3> rot_ = {};
    std::array<Rational, 3> trans_ = {Rational(0), Rational(0), Rational(0)};
};

/// Wraps a fractional coordinate into [0, 1).
inline double wrap_frac(double x) {
    double w = x - std::floor(x);
    if (w >= 1.0) w -= 1.0;  // guards x = -1e-17 rounding to 1.0
    return w;
}

struct Site {
    std::string element;
    Vec3 frac = {0, 0, 0};           // wrapped into [0,1)
    Rational occupancy = Rational(1);  // in (0, 1]

    Site() = default;
    Site(std::string elem, const Vec3& coords, Rational occ = Rational(1))
        : element(std::move(elem)), occupancy(occ) {
        for (int i = 0; i < 3; ++i) frac[i] = wrap_frac(coords[i]);
        if (!occupancy.is_positive() || occupancy > Rational(1))
            throw ValueError("site occupancy must lie in (0, 1]: " + element);
    }
};

class CrystalStructure {
public:
    CrystalStructure(Lattice lattice, std::vector<SymOp> ops,
                     std::vector<Site> sites, std::string space_group = "P 1")
        : lattice_(std::move(lattice)),
          ops_(std::move(ops)),
          sites_(std::move(sites)),
          space_group_(std::move(space_group)) {
        if (ops_.empty()) ops_.push_back(SymOp::identity());
    }

    const Lattice& lattice() const { return lattice_; }
    const std::vector<SymOp>& ops() const { return ops_; }
    const std::vector<Site>& sites() const { return sites_; }
    const std::string& space_group() const { return space_group_; }
    std::size_t n_sites() const { return sites_.size(); }

    bool is_p1() const { return ops_.size() == 1 && ops_[0].is_identity(); }

private:
    Lattice lattice_;
    std::vector<SymOp> ops_;
    std::vector<Site> sites_;
    std::string space_group_;
};

/// Total composition of the cell (occupancy-weighted, exact).
inline Composition composition_of(const CrystalStructure& s,
                                  const ElementTable& table = builtin_elements()) {
    Composition::CountMap counts;
    for (const auto& site : s.sites()) {
        auto [it, inserted] = counts.emplace(site.element, site.occupancy);
        if (!inserted) it->second += site.occupancy;
    }
    return Composition(std::move(counts), table);
}

/// Applies every symmetry operation to every site and merges duplicates
/// (cartesian distance < merge_tol). Result carries only the identity op.
inline CrystalStructure expand_to_p1(const CrystalStructure& s,
                                     double merge_tol = 1e-3) {
    if (s.is_p1()) return s;
    std::vector<Site> expanded;
    const Lattice& lat = s.lattice();
    auto is_duplicate = [&](const Vec3& frac, const std::string& elem) {
        for (const auto& e : expanded) {
            if (e.element != elem) continue;
            Vec3 d;
            for (int i = 0; i < 3; ++i) {
                double diff = frac[i] - e.frac[i];
                diff -= std::round(diff);  // nearest periodic image
                d[i] = diff;
            }
            if (detail::norm(lat.frac_to_cart(d)) < merge_tol) return true;
        }
        return false;
    };
    for (const auto& site : s.sites()) {
        for (const auto& op : s.ops()) {
            Vec3 f = op.apply(site.frac);
            for (int i = 0; i < 3; ++i) f[i] = wrap_frac(f[i]);
            if (!is_duplicate(f, site.element))
                expanded.emplace_back(site.element, f, site.occupancy);
        }
    }
    return CrystalStructure(lat, {SymOp::identity()}, std::move(expanded),
                            s.space_group());
}

struct Neighbor {
    std::size_t i = 0;  // central site index
    std::size_t j = 0;  // neighbor site index
    std::array<int, 3> image = {0, 0, 0};
    double distance = 0.0;
};

struct NeighborOptions {
    double clash_threshold = 0.5;  // Angstrom
    /// Throw on contacts shorter than clash_threshold (corrupt structure).
    bool throw_on_clash = true;
};

/// All ordered periodic pairs (i -> j, image) with distance <= cutoff.
/// Image enumeration covers the cutoff completely. Self pairs appear
/// only with a nonzero image.
inline std::vector<Neighbor> neighbor_list(const CrystalStructure& input,
                                           double cutoff,
                                           const NeighborOptions& opts = {}) {
    if (cutoff <= 0) throw ValueError("neighbor cutoff must be positive");
    CrystalStructure s = expand_to_p1(input);
    const Lattice& lat = s.lattice();
    Vec3 widths = lat.perpendicular_widths();
    std::array<int, 3> reach;
    for (int i = 0; i < 3; ++i)
        reach[i] = static_cast<int>(std::ceil(cutoff / widths[i]));
    Mat3 m = lat.matrix();

    std::vector<Vec3> cart(s.n_sites());
    for (std::size_t i = 0; i < s.n_sites(); ++i)
        cart[i] = lat.frac_to_cart(s.sites()[i].frac);

    std::vector<Neighbor> out;
    for (std::size_t i = 0; i < s.n_sites(); ++i) {
        for (std::size_t j = 0; j < s.n_sites(); ++j) {
            for (int na = -reach[0]; na <= reach[0]; ++na) {
                for (int nb = -reach[1]; nb <= reach[1]; ++nb) {
                    for (int nc = -reach[2]; nc <= reach[2]; ++nc) {
                        if (i == j && na == 0 && nb == 0 && nc == 0) continue;
                        Vec3 d;
                        for (int k = 0; k < 3; ++k)
                            d[k] = cart[j][k] + na * m[0][k] + nb * m[1][k] +
                                   nc * m[2][k] - cart[i][k];
                        double dist = detail::norm(d);
                        if (dist > cutoff) continue;
                        if (dist < opts.clash_threshold && opts.throw_on_clash)
                            throw ValueError(
                                "atomic clash: sites " + std::to_string(i) + "/" +
                                std::to_string(j) + " at " + std::to_string(dist) +
                                " A");
                        out.push_back({i, j, {na, nb, nc}, dist});
                    }
                }
            }
        }
    }
    return out;
}

/// Shortest interatomic contact in the periodic crystal. Always defined:
/// the search radius is grown to at least the shortest cell axis, so an
/// isolated atom still sees its own periodic image.
inline double min_interatomic_distance(const CrystalStructure& input) {
    CrystalStructure s = expand_to_p1(input);
    const Lattice& lat = s.lattice();
    double cutoff = std::min({lat.a(), lat.b(), lat.c()}) + 1e-9;
    NeighborOptions opts;
    opts.throw_on_clash = false;
    auto pairs = neighbor_list(s, cutoff, opts);
    double best = cutoff;
    for (const auto& p : pairs) best = std::min(best, p.distance);
    return best;
}

/// Single-line canonical JSON record for pipeline persistence.
inline std::string structure_to_json_line(const CrystalStructure& s) {
    nlohmann::json j;
    j["lattice"] = {{"a", s.lattice().a()},         {"b", s.lattice().b()},
                    {"c", s.lattice().c()},         {"alpha", s.lattice().alpha()},
                    {"beta", s.lattice().beta()},   {"gamma", s.lattice().gamma()}};
    j["space_group"] = s.space_group();
    auto ops = nlohmann::json::array();
    for (const auto& op : s.ops()) ops.push_back(op.str());
    j["ops"] = std::move(ops);
    auto sites = nlohmann::json::array();
    for (const auto& site : s.sites()) {
        sites.push_back({{"element", site.element},
                         {"frac", {site.frac[0], site.frac[1], site.frac[2]}},
                         {"occupancy", site.occupancy.str()}});
    }
    j["sites"] = std::move(sites);
    return j.dump();
}

inline CrystalStructure structure_from_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad structure record: ") + e.what());
    }
    try {
        const auto& jl = j.at("lattice");
        Lattice lat(jl.at("a").get<double>(), jl.at("b").get<double>(),
                    jl.at("c").get<double>(), jl.at("alpha").get<double>(),
                    jl.at("beta").get<double>(), jl.at("gamma").get<double>());
        std::vector<SymOp> ops;
        for (const auto& t : j.at("ops")) ops.push_back(SymOp::parse(t.get<std::string>()));
        std::vector<Site> sites;
        for (const auto& js : j.at("sites")) {
            const auto& f = js.at("frac");
            sites.emplace_back(js.at("element").get<std::string>(),
                               Vec3{f.at(0).get<double>(), f.at(1).get<double>(),
                                    f.at(2).get<double>()},
                               Rational::parse(js.at("occupancy").get<std::string>()));
        }
        return CrystalStructure(lat, std::move(ops), std::move(sites),
                                j.value("space_group", std::string("P 1")));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad structure record: ") + e.what());
    }
}

}  // namespace synthrank
