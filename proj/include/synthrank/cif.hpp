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
/// CIF reader for the subset needed here: cell parameters, the symmetry
/// loop, and the atom-site loop. Anything else is skipped and reported
/// through the warning channel.

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "synthrank/errors.hpp"
#include "synthrank/structure.hpp"

namespace synthrank {

namespace detail {

struct CifToken {
    enum Kind { kTag, kValue, kLoop, kData } kind;
    std::string text;
};

inline std::vector<CifToken> cif_tokenize(const std::string& text) {
    std::vector<CifToken> tokens;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = 0;
        while (i < line.size()) {
            char c = line[i];
            if (std::isspace((unsigned char)c)) {
                ++i;
                continue;
            }
            if (c == '#') break;  // comment to end of line
            if (c == '\'' || c == '"') {
                std::size_t end = line.find(c, i + 1);
                if (end == std::string::npos)
                    throw ParseError("unterminated quoted CIF value: " + line);
                tokens.push_back({CifToken::kValue, line.substr(i + 1, end - i - 1)});
                i = end + 1;
                continue;
            }
            std::size_t start = i;
            while (i < line.size() && !std::isspace((unsigned char)line[i])) ++i;
            std::string word = line.substr(start, i - start);
            if (word[0] == '_')
                tokens.push_back({CifToken::kTag, word});
            else if (word == "loop_")
                tokens.push_back({CifToken::kLoop, word});
            else if (word.rfind("data_", 0) == 0)
                tokens.push_back({CifToken::kData, word});
            else
                tokens.push_back({CifToken::kValue, word});
        }
    }
    return tokens;
}

/// Numeric CIF value; strips a trailing "(esd)" suffix.
inline double cif_number(const std::string& raw, const std::string& context) {
    std::string t = raw;
    auto paren = t.find('(');
    if (paren != std::string::npos) t.erase(paren);
    try {
        std::size_t used = 0;
        double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        throw ParseError("non-numeric CIF value '" + raw + "' for " + context);
    }
}

/// "Nd3+" / "O2-" -> bare element symbol.
inline std::string cif_element_symbol(const std::string& raw) {
    std::string sym;
    for (char c : raw) {
        if (std::isalpha((unsigned char)c))
            sym += c;
        else
            break;
    }
    return sym;
}

}  // namespace detail

/// Parses the first data block of a CIF document. Unknown tags are
/// ignored; their names are appended to `warnings` when provided.
inline CrystalStructure parse_cif(const std::string& text,
                                  std::vector<std::string>* warnings = nullptr,
                                  const ElementTable& table = builtin_elements()) {
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };
    auto tokens = detail::cif_tokenize(text);

    // restrict to the first data block
    std::size_t begin = 0, end = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].kind == detail::CifToken::kData) {
            begin = i + 1;
            for (std::size_t j = begin; j < tokens.size(); ++j) {
                if (tokens[j].kind == detail::CifToken::kData) {
                    end = j;
                    warn("multiple data blocks; using the first");
                    break;
                }
            }
            break;
        }
    }

    double a = 0, b = 0, c = 0, alpha = 0, beta = 0, gamma = 0;
    bool have[6] = {false, false, false, false, false, false};
    std::string space_group = "P 1";
    std::vector<SymOp> ops;
    std::vector<Site> sites;

    std::size_t i = begin;
    auto next_value = [&](const std::string& tag) -> std::string {
        if (i >= end || tokens[i].kind != detail::CifToken::kValue)
            throw ParseError("missing value for CIF tag " + tag);
        return tokens[i++].text;
    };

    while (i < end) {
        const auto& tok = tokens[i];
        if (tok.kind == detail::CifToken::kTag) {
            std::string tag = tok.text;
            ++i;
            std::string value = next_value(tag);
            if (tag == "_cell_length_a") {
                a = detail::cif_number(value, tag);
                have[0] = true;
            } else if (tag == "_cell_length_b") {
                b = detail::cif_number(value, tag);
                have[1] = true;
            } else if (tag == "_cell_length_c") {
                c = detail::cif_number(value, tag);
                have[2] = true;
            } else if (tag == "_cell_angle_alpha") {
                alpha = detail::cif_number(value, tag);
                have[3] = true;
            } else if (tag == "_cell_angle_beta") {
                beta = detail::cif_number(value, tag);
                have[4] = true;
            } else if (tag == "_cell_angle_gamma") {
                gamma = detail::cif_number(value, tag);
                have[5] = true;
            } else if (tag == "_symmetry_space_group_name_H-M" ||
                       tag == "_space_group_name_H-M_alt") {
                space_group = value;
            } else {
                warn("ignored tag " + tag);
            }
            continue;
        }
        if (tok.kind == detail::CifToken::kLoop) {
            ++i;
            std::vector<std::string> header;
            while (i < end && tokens[i].kind == detail::CifToken::kTag)
                header.push_back(tokens[i++].text);
            if (header.empty()) throw ParseError("loop_ without column tags");
            std::vector<std::string> row;
            std::vector<std::vector<std::string>> rows;
            while (i < end && tokens[i].kind == detail::CifToken::kValue) {
                row.push_back(tokens[i++].text);
                if (row.size() == header.size()) {
                    rows.push_back(std::move(row));
                    row.clear();
                }
            }
            if (!row.empty())
                throw ParseError("malformed loop row: expected " +
                                 std::to_string(header.size()) +
                                 " values, trailing row has " +
                                 std::to_string(row.size()));

            auto column = [&](const std::string& name) -> int {
                for (std::size_t k = 0; k < header.size(); ++k)
                    if (header[k] == name) return static_cast<int>(k);
                return -1;
            };

            int col_xyz = column("_symmetry_equiv_pos_as_xyz");
            if (col_xyz < 0) col_xyz = column("_space_group_symop_operation_xyz");
            int col_fx = column("_atom_site_fract_x");
            if (col_xyz >= 0) {
                for (const auto& r : rows) ops.push_back(SymOp::parse(r[col_xyz]));
            } else if (col_fx >= 0) {
                int col_fy = column("_atom_site_fract_y");
                int col_fz = column("_atom_site_fract_z");
                if (col_fy < 0 || col_fz < 0)
                    throw ParseError("atom site loop lacks fract_y/fract_z");
                int col_type = column("_atom_site_type_symbol");
                int col_label = column("_atom_site_label");
                int col_occ = column("_atom_site_occupancy");
                if (col_type < 0 && col_label < 0)
                    throw ParseError("atom site loop lacks element column");
                for (const auto& r : rows) {
                    std::string sym = detail::cif_element_symbol(
                        r[col_type >= 0 ? col_type : col_label]);
                    if (!table.contains(sym))
                        throw ParseError("unknown element in atom site: " + sym);
                    Vec3 f = {detail::cif_number(r[col_fx], "_atom_site_fract_x"),
                              detail::cif_number(r[col_fy], "_atom_site_fract_y"),
                              detail::cif_number(r[col_fz], "_atom_site_fract_z")};
                    Rational occ(1);
                    if (col_occ >= 0) {
                        std::string t = r[col_occ];
                        auto paren = t.find('(');
                        if (paren != std::string::npos) t.erase(paren);
                        occ = Rational::parse(t);
                    }
                    sites.emplace_back(sym, f, occ);
                }
                for (const auto& col : header) {
                    if (col != "_atom_site_fract_x" && col != "_atom_site_fract_y" &&
                        col != "_atom_site_fract_z" &&
                        col != "_atom_site_type_symbol" &&
                        col != "_atom_site_label" && col != "_atom_site_occupancy" &&
                        col != "_atom_site_symmetry_multiplicity")
                        warn("ignored atom site column " + col);
                }
            } else {
                warn("ignored loop with columns " + header.front() + " ...");
            }
            continue;
        }
        warn("stray CIF value '" + tok.text + "'");
        ++i;
    }

    static const char* names[6] = {"_cell_length_a",    "_cell_length_b",
                                   "_cell_length_c",    "_cell_angle_alpha",
                                   "_cell_angle_beta",  "_cell_angle_gamma"};
    for (int k = 0; k < 6; ++k)
        if (!have[k]) throw ParseError(std::string("missing cell parameter ") + names[k]);
    if (sites.empty()) throw ParseError("CIF contains no atom sites");
    if (ops.empty()) {
        warn("no symmetry loop; assuming P1");
        ops.push_back(SymOp::identity());
    }
    return CrystalStructure(Lattice(a, b, c, alpha, beta, gamma), std::move(ops),
                            std::move(sites), space_group);
}

/// Convenience file wrapper.
inline CrystalStructure parse_cif_file(const std::string& path,
                                       std::vector<std::string>* warnings = nullptr,
                                       const ElementTable& table = builtin_elements()) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open CIF file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cif(buf.str(), warnings, table);
}

}  // namespace synthrank
