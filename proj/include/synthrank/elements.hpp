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
/// Per-element property data: molar mass, Pauling electronegativity,
/// common oxidation states, covalent radius, periodic group/row.
///
/// A built-in table covers Z = 1..118 (masses are IUPAC conventional
/// values, radii Cordero/Pyykko, oxidation states a curated common-state
/// list). The same records can be loaded from the line-oriented file
/// format documented in load_element_table().

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synthrank/errors.hpp"

namespace synthrank {

struct ElementData {
    std::string symbol;
    int z = 0;
    double molar_mass = 0.0;               // g/mol
    double electronegativity = kNoEN;      // Pauling; NaN when undefined
    std::vector<int> oxidation_states;     // common states, may be empty
    double covalent_radius = 0.0;          // Angstrom
    int group = 0;                         // 1..18 (f-block folded into 3)
    int row = 0;                           // 1..7

    static constexpr double kNoEN = std::numeric_limits<double>::quiet_NaN();

    bool has_electronegativity() const { return !std::isnan(electronegativity); }
};

class ElementTable {
public:
    /// Builds the table from explicit records; validates Z uniqueness.
    explicit ElementTable(std::vector<ElementData> rows) : rows_(std::move(rows)) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& e = rows_[i];
            if (e.z < 1 || e.z > 118)
                throw ValueError("element Z out of range: " + e.symbol);
            if (e.molar_mass <= 0.0)
                throw ValueError("non-positive molar mass: " + e.symbol);
            if (!by_symbol_.emplace(e.symbol, i).second)
                throw ValueError("duplicate element symbol: " + e.symbol);
            if (!by_z_.emplace(e.z, i).second)
                throw ValueError("duplicate atomic number: " + std::to_string(e.z));
        }
    }

    bool contains(std::string_view symbol) const {
        return by_symbol_.find(std::string(symbol)) != by_symbol_.end();
    }

    const ElementData& get(std::string_view symbol) const {
        auto it = by_symbol_.find(std::string(symbol));
        if (it == by_symbol_.end())
            throw ValueError("unknown element symbol: " + std::string(symbol));
        return rows_[it->second];
    }

    const ElementData& get(int z) const {
        auto it = by_z_.find(z);
        if (it == by_z_.end())
            throw ValueError("unknown atomic number: " + std::to_string(z));
        return rows_[it->second];
    }

    std::size_t size() const { return rows_.size(); }
    const std::vector<ElementData>& rows() const { return rows_; }

private:
    std::vector<ElementData> rows_;
    std::unordered_map<std::string, std::size_t> by_symbol_;
    std::unordered_map<int, std::size_t> by_z_;
};

namespace detail {

inline std::vector<ElementData> builtin_element_rows() {
    constexpr double kNoEN = ElementData::kNoEN;
    return {
    {"H", 1, 1.008, 2.2, {-1,1}, 0.31, 1, 1},
    {"He", 2, 4.0026, kNoEN, {}, 0.28, 18, 1},
    {"Li", 3, 6.94, 0.98, {1}, 1.28, 1, 2},
    {"Be", 4, 9.0122, 1.57, {2}, 0.96, 2, 2},
    {"B", 5, 10.81, 2.04, {3}, 0.84, 13, 2},
    {"C", 6, 12.011, 2.55, {-4,2,4}, 0.76, 14, 2},
    {"N", 7, 14.007, 3.04, {-3,3,5}, 0.71, 15, 2},
    {"O", 8, 15.999, 3.44, {-2,-1}, 0.66, 16, 2},
    {"F", 9, 18.998, 3.98, {-1}, 0.57, 17, 2},
    {"Ne", 10, 20.18, kNoEN, {}, 0.58, 18, 2},
    {"Na", 11, 22.99, 0.93, {1}, 1.66, 1, 3},
    {"Mg", 12, 24.305, 1.31, {2}, 1.41, 2, 3},
    {"Al", 13, 26.982, 1.61, {3}, 1.21, 13, 3},
    {"Si", 14, 28.085, 1.9, {-4,4}, 1.11, 14, 3},
    {"P", 15, 30.974, 2.19, {-3,3,5}, 1.07, 15, 3},
    {"S", 16, 32.06, 2.58, {-2,4,6}, 1.05, 16, 3},
    {"Cl", 17, 35.45, 3.16, {-1,1,3,5,7}, 1.02, 17, 3},
    {"Ar", 18, 39.948, kNoEN, {}, 1.06, 18, 3},
    {"K", 19, 39.098, 0.82, {1}, 2.03, 1, 4},
    {"Ca", 20, 40.078, 1, {2}, 1.76, 2, 4},
    {"Sc", 21, 44.956, 1.36, {3}, 1.7, 3, 4},
    {"Ti", 22, 47.867, 1.54, {2,3,4}, 1.6, 4, 4},
    {"V", 23, 50.942, 1.63, {2,3,4,5}, 1.53, 5, 4},
    {"Cr", 24, 51.996, 1.66, {2,3,6}, 1.39, 6, 4},
    {"Mn", 25, 54.938, 1.55, {2,3,4,6,7}, 1.61, 7, 4},
    {"Fe", 26, 55.845, 1.83, {2,3}, 1.52, 8, 4},
    {"Co", 27, 58.933, 1.88, {2,3}, 1.5, 9, 4},
    {"Ni", 28, 58.693, 1.91, {2}, 1.24, 10, 4},
    {"Cu", 29, 63.546, 1.9, {1,2}, 1.32, 11, 4},
    {"Zn", 30, 65.38, 1.65, {2}, 1.22, 12, 4},
    {"Ga", 31, 69.723, 1.81, {3}, 1.22, 13, 4},
    {"Ge", 32, 72.63, 2.01, {-4,2,4}, 1.2, 14, 4},
    {"As", 33, 74.922, 2.18, {-3,3,5}, 1.19, 15, 4},
    {"Se", 34, 78.971, 2.55, {-2,4,6}, 1.2, 16, 4},
    {"Br", 35, 79.904, 2.96, {-1,1,3,5,7}, 1.2, 17, 4},
    {"Kr", 36, 83.798, 3, {2}, 1.16, 18, 4},
    {"Rb", 37, 85.468, 0.82, {1}, 2.2, 1, 5},
    {"Sr", 38, 87.62, 0.95, {2}, 1.95, 2, 5},
    {"Y", 39, 88.906, 1.22, {3}, 1.9, 3, 5},
    {"Zr", 40, 91.224, 1.33, {4}, 1.75, 4, 5},
    {"Nb", 41, 92.906, 1.6, {3,5}, 1.64, 5, 5},
    {"Mo", 42, 95.95, 2.16, {2,3,4,5,6}, 1.54, 6, 5},
    {"Tc", 43, 98, 1.9, {4,7}, 1.47, 7, 5},
    {"Ru", 44, 101.07, 2.2, {2,3,4}, 1.46, 8, 5},
    {"Rh", 45, 102.91, 2.28, {3}, 1.42, 9, 5},
    {"Pd", 46, 106.42, 2.2, {2,4}, 1.39, 10, 5},
    {"Ag", 47, 107.87, 1.93, {1}, 1.45, 11, 5},
    {"Cd", 48, 112.41, 1.69, {2}, 1.44, 12, 5},
    {"In", 49, 114.82, 1.78, {1,3}, 1.42, 13, 5},
    {"Sn", 50, 118.71, 1.96, {2,4}, 1.39, 14, 5},
    {"Sb", 51, 121.76, 2.05, {-3,3,5}, 1.39, 15, 5},
    {"Te", 52, 127.6, 2.1, {-2,4,6}, 1.38, 16, 5},
    {"I", 53, 126.9, 2.66, {-1,1,3,5,7}, 1.39, 17, 5},
    {"Xe", 54, 131.29, 2.6, {2,4,6}, 1.4, 18, 5},
    {"Cs", 55, 132.91, 0.79, {1}, 2.44, 1, 6},
    {"Ba", 56, 137.33, 0.89, {2}, 2.15, 2, 6},
    {"La", 57, 138.91, 1.1, {3}, 2.07, 3, 6},
    {"Ce", 58, 140.12, 1.12, {3,4}, 2.04, 3, 6},
    {"Pr", 59, 140.91, 1.13, {3,4}, 2.03, 3, 6},
    {"Nd", 60, 144.242, 1.14, {3}, 2.01, 3, 6},
    {"Pm", 61, 145, 1.13, {3}, 1.99, 3, 6},
    {"Sm", 62, 150.36, 1.17, {2,3}, 1.98, 3, 6},
    {"Eu", 63, 151.96, 1.2, {2,3}, 1.98, 3, 6},
    {"Gd", 64, 157.25, 1.2, {3}, 1.96, 3, 6},
    {"Tb", 65, 158.93, 1.1, {3,4}, 1.94, 3, 6},
    {"Dy", 66, 162.5, 1.22, {3}, 1.92, 3, 6},
    {"Ho", 67, 164.93, 1.23, {3}, 1.92, 3, 6},
    {"Er", 68, 167.26, 1.24, {3}, 1.89, 3, 6},
    {"Tm", 69, 168.93, 1.25, {2,3}, 1.9, 3, 6},
    {"Yb", 70, 173.05, 1.1, {2,3}, 1.87, 3, 6},
    {"Lu", 71, 174.97, 1.27, {3}, 1.87, 3, 6},
    {"Hf", 72, 178.49, 1.3, {4}, 1.75, 4, 6},
    {"Ta", 73, 180.95, 1.5, {5}, 1.7, 5, 6},
    {"W", 74, 183.84, 2.36, {4,6}, 1.62, 6, 6},
    {"Re", 75, 186.21, 1.9, {4,7}, 1.51, 7, 6},
    {"Os", 76, 190.23, 2.2, {3,4}, 1.44, 8, 6},
    {"Ir", 77, 192.22, 2.2, {3,4}, 1.41, 9, 6},
    {"Pt", 78, 195.08, 2.28, {2,4}, 1.36, 10, 6},
    {"Au", 79, 196.97, 2.54, {1,3}, 1.36, 11, 6},
    {"Hg", 80, 200.59, 2, {1,2}, 1.32, 12, 6},
    {"Tl", 81, 204.38, 1.62, {1,3}, 1.45, 13, 6},
    {"Pb", 82, 207.2, 2.33, {2,4}, 1.46, 14, 6},
    {"Bi", 83, 208.98, 2.02, {3,5}, 1.48, 15, 6},
    {"Po", 84, 209, 2, {-2,2,4}, 1.4, 16, 6},
    {"At", 85, 210, 2.2, {-1,1}, 1.5, 17, 6},
    {"Rn", 86, 222, 2.2, {2}, 1.5, 18, 6},
    {"Fr", 87, 223, 0.7, {1}, 2.6, 1, 7},
    {"Ra", 88, 226, 0.9, {2}, 2.21, 2, 7},
    {"Ac", 89, 227, 1.1, {3}, 2.15, 3, 7},
    {"Th", 90, 232.04, 1.3, {4}, 2.06, 3, 7},
    {"Pa", 91, 231.04, 1.5, {4,5}, 2, 3, 7},
    {"U", 92, 238.03, 1.38, {3,4,5,6}, 1.96, 3, 7},
    {"Np", 93, 237, 1.36, {4,5,6}, 1.9, 3, 7},
    {"Pu", 94, 244, 1.28, {3,4}, 1.87, 3, 7},
    {"Am", 95, 243, 1.3, {3}, 1.8, 3, 7},
    {"Cm", 96, 247, 1.3, {3}, 1.69, 3, 7},
    {"Bk", 97, 247, 1.3, {3,4}, 1.68, 3, 7},
    {"Cf", 98, 251, 1.3, {3}, 1.68, 3, 7},
    {"Es", 99, 252, 1.3, {3}, 1.65, 3, 7},
    {"Fm", 100, 257, 1.3, {3}, 1.67, 3, 7},
    {"Md", 101, 258, 1.3, {2,3}, 1.73, 3, 7},
    {"No", 102, 259, 1.3, {2,3}, 1.76, 3, 7},
    {"Lr", 103, 262, kNoEN, {3}, 1.61, 3, 7},
    {"Rf", 104, 267, kNoEN, {4}, 1.57, 4, 7},
    {"Db", 105, 268, kNoEN, {5}, 1.49, 5, 7},
    {"Sg", 106, 269, kNoEN, {6}, 1.43, 6, 7},
    {"Bh", 107, 270, kNoEN, {7}, 1.41, 7, 7},
    {"Hs", 108, 277, kNoEN, {8}, 1.34, 8, 7},
    {"Mt", 109, 278, kNoEN, {}, 1.29, 9, 7},
    {"Ds", 110, 281, kNoEN, {}, 1.28, 10, 7},
    {"Rg", 111, 282, kNoEN, {}, 1.21, 11, 7},
    {"Cn", 112, 285, kNoEN, {}, 1.22, 12, 7},
    {"Nh", 113, 286, kNoEN, {}, 1.36, 13, 7},
    {"Fl", 114, 289, kNoEN, {}, 1.43, 14, 7},
    {"Mc", 115, 290, kNoEN, {}, 1.62, 15, 7},
    {"Lv", 116, 293, kNoEN, {}, 1.75, 16, 7},
    {"Ts", 117, 294, kNoEN, {}, 1.65, 17, 7},
    {"Og", 118, 294, kNoEN, {}, 1.57, 18, 7},
    };
}

}  // namespace detail

/// The built-in Z=1..118 table. Immutable after first use.
inline const ElementTable& builtin_elements() {
    static const ElementTable table(detail::builtin_element_rows());
    return table;
}

/// Reads an element table from the line-oriented format shipped in
/// data/elements.dat:
///
///   symbol  Z  molar_mass  electronegativity  oxidation_states  radius  group  row
///
/// Whitespace-separated columns, one element per line, '#' comments,
/// '-' for a missing electronegativity or empty state list,
/// oxidation_states a comma-separated integer list. UTF-8.
inline ElementTable load_element_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open element table: " + path);
    std::vector<ElementData> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        ElementData e;
        std::string en_field, states_field;
        if (!(ls >> e.symbol)) continue;  // blank line
        if (!(ls >> e.z >> e.molar_mass >> en_field >> states_field >>
              e.covalent_radius >> e.group >> e.row))
            throw ParseError("malformed element record at line " +
                             std::to_string(lineno) + " of " + path);
        if (en_field != "-") {
            try {
                e.electronegativity = std::stod(en_field);
            } catch (const std::exception&) {
                throw ParseError("bad electronegativity at line " +
                                 std::to_string(lineno) + " of " + path);
            }
        }
        if (states_field != "-") {
            std::istringstream ss(states_field);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    e.oxidation_states.push_back(std::stoi(tok));
                } catch (const std::exception&) {
                    throw ParseError("bad oxidation state at line " +
                                     std::to_string(lineno) + " of " + path);
                }
            }
        }
        rows.push_back(std::move(e));
    }
    return ElementTable(std::move(rows));
}

/// Writes a table back out in the same format (round-trips exactly for
/// tables whose numeric fields print losslessly with %.10g).
inline void save_element_table(const ElementTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write element table: " + path);
    out << "# symbol Z molar_mass electronegativity oxidation_states "
           "covalent_radius group row\n";
    char buf[64];
    for (const auto& e : table.rows()) {
        out << e.symbol << ' ' << e.z << ' ';
        std::snprintf(buf, sizeof buf, "%.10g", e.molar_mass);
        out << buf << ' ';
        if (e.has_electronegativity()) {
            std::snprintf(buf, sizeof buf, "%.10g", e.electronegativity);
            out << buf;
        } else {
            out << '-';
        }
        out << ' ';
        if (e.oxidation_states.empty()) {
            out << '-';
        } else {
            for (std::size_t i = 0; i < e.oxidation_states.size(); ++i)
                out << (i ? "," : "") << e.oxidation_states[i];
        }
        std::snprintf(buf, sizeof buf, "%.10g", e.covalent_radius);
        out << ' ' << buf << ' ' << e.group << ' ' << e.row << '\n';
    }
    if (!out) throw IoError("write failure: " + path);
}

/// Platinum-group elements excluded during screening.
inline const std::array<std::string_view, 6>& platinoid_elements() {
    static const std::array<std::string_view, 6> set = {"Ru", "Rh", "Pd",
                                                        "Os", "Ir", "Pt"};
    return set;
}

}  // namespace synthrank
