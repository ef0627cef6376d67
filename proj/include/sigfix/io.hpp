// Copyright 2026 The sigfix authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sigfix/construction.hpp"
#include "sigfix/groupring.hpp"
#include "sigfix/gsignature.hpp"
#include "sigfix/lattice.hpp"
#include "sigfix/numtheory.hpp"
#include "sigfix/search.hpp"

namespace sigfix::io {

using ojson = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

// ---------------------------------------------------------------------------
// ActionData
// ---------------------------------------------------------------------------

inline ojson action_to_json(const ActionData& d) {
    ojson j;
    j["m"] = d.m;
    j["perm"] = d.perm.cycles;
    j["isolated"] = ojson::array();
    for (const auto& o : d.isolated) {
        ojson e;
        e["q"] = o.q;
        e["data"] = {o.c, o.d};
        j["isolated"].push_back(e);
    }
    j["spheres"] = ojson::array();
    for (const auto& s : d.spheres) {
        ojson e;
        e["q"] = s.q;
        e["euler"] = s.euler;
        e["rot"] = s.rot;
        j["spheres"].push_back(e);
    }
    return j;
}

inline ActionData action_from_json(const ojson& j) {
    ActionData d;
    try {
        d.m = j.at("m").get<long long>();
        d.perm.cycles = j.at("perm").get<std::vector<long long>>();
        for (const auto& e : j.at("isolated")) {
            IsolatedOrbit o;
            o.q = e.at("q").get<long long>();
            auto data = e.at("data").get<std::vector<long long>>();
            if (data.size() != 2) throw std::invalid_argument("isolated data must be a pair");
            o.c = data[0];
            o.d = data[1];
            d.isolated.push_back(o);
        }
        for (const auto& e : j.at("spheres")) {
            SphereOrbit s;
            s.q = e.at("q").get<long long>();
            s.euler = e.at("euler").get<long long>();
            s.rot = e.at("rot").get<long long>();
            d.spheres.push_back(s);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed action data: ") + e.what());
    }
    d.validate();
    return d;
}

inline std::string action_to_string(const ActionData& d) { return action_to_json(d).dump(2) + "\n"; }

inline ActionData action_from_string(const std::string& text) {
    ojson j = ojson::parse(text, nullptr, true);
    return action_from_json(j);
}

// ---------------------------------------------------------------------------
// DefectDataset
// ---------------------------------------------------------------------------

inline ojson dataset_to_json(const DefectDataset& ds) {
    ojson j;
    j["m"] = ds.m;
    j["terms"] = ojson::array();
    for (const auto& [a, b] : ds.terms) j["terms"].push_back({a, b});
    return j;
}

inline DefectDataset dataset_from_string(const std::string& text) {
    DefectDataset ds;
    try {
        ojson j = ojson::parse(text);
        ds.m = j.at("m").get<int>();
        for (const auto& e : j.at("terms")) {
            auto pair = e.get<std::vector<long long>>();
            if (pair.size() != 2) throw std::invalid_argument("terms must be pairs");
            ds.terms.emplace_back(pair[0], pair[1]);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed defect dataset: ") + e.what());
    }
    return ds;
}

// ---------------------------------------------------------------------------
// GroupRingMatrix
// ---------------------------------------------------------------------------

inline ojson groupring_matrix_to_json(const GroupRingMatrix& m) {
    ojson j;
    j["m"] = m.order();
    j["rows"] = ojson::array();
    for (long long i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (long long c = 0; c < m.cols(); ++c) {
            ojson coeffs = ojson::array();
            for (const Int& v : m.at(i, c).coeffs()) coeffs.push_back(v.str());
            row.push_back(coeffs);
        }
        j["rows"].push_back(row);
    }
    return j;
}

inline GroupRingMatrix groupring_matrix_from_string(const std::string& text) {
    try {
        ojson j = ojson::parse(text);
        long long m = j.at("m").get<long long>();
        const auto& rows = j.at("rows");
        long long nr = static_cast<long long>(rows.size());
        if (nr == 0) throw std::invalid_argument("empty matrix");
        long long nc = static_cast<long long>(rows[0].size());
        GroupRingMatrix out(m, nr, nc);
        for (long long i = 0; i < nr; ++i) {
            if (static_cast<long long>(rows[i].size()) != nc)
                throw std::invalid_argument("ragged matrix rows");
            for (long long c = 0; c < nc; ++c) {
                std::vector<Int> coeffs;
                for (const auto& v : rows[i][c]) {
                    if (v.is_string()) coeffs.emplace_back(v.get<std::string>());
                    else coeffs.emplace_back(v.get<long long>());
                }
                out.at(i, c) = GroupRingElement::from_coeffs(m, std::move(coeffs));
            }
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed group-ring matrix: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// IntSymMatrix: whitespace rows or a JSON array of arrays
// ---------------------------------------------------------------------------

inline IntSymMatrix intsym_from_string(const std::string& text) {
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty matrix file");
    std::vector<std::vector<Int>> rows;
    if (text[first] == '[' || text[first] == '{') {
        try {
            ojson j = ojson::parse(text);
            const ojson& arr = j.is_object() ? j.at("rows") : j;
            for (const auto& row : arr) {
                std::vector<Int> r;
                for (const auto& v : row) {
                    if (v.is_string()) r.emplace_back(v.get<std::string>());
                    else r.emplace_back(v.get<long long>());
                }
                rows.push_back(std::move(r));
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("malformed matrix: ") + e.what());
        }
    } else {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<Int> r;
            std::string tok;
            while (ls >> tok) r.emplace_back(tok);
            if (!r.empty()) rows.push_back(std::move(r));
        }
    }
    return IntSymMatrix::from_rows(rows);
}

inline std::string intsym_to_text(const IntSymMatrix& a) {
    std::ostringstream os;
    for (long long i = 0; i < a.rank(); ++i) {
        for (long long j = 0; j < a.rank(); ++j) {
            if (j) os << ' ';
            os << a.at(i, j);
        }
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Linking-search config
// ---------------------------------------------------------------------------

struct LinkingSearchConfig {
    long long m = 25, q = 5;
    SearchConstraints constraints;
    bool prune = true;
};

inline LinkingSearchConfig search_config_from_string(const std::string& text) {
    LinkingSearchConfig cfg;
    try {
        ojson j = ojson::parse(text);
        cfg.m = j.at("m").get<long long>();
        cfg.q = j.at("q").get<long long>();
        cfg.constraints.modulus = j.at("modulus").get<long long>();
        auto tmpl = j.at("template").get<std::vector<long long>>();
        auto lo = j.at("lo").get<std::vector<long long>>();
        auto hi = j.at("hi").get<std::vector<long long>>();
        if (tmpl.size() != 9 || lo.size() != 9 || hi.size() != 9)
            throw std::invalid_argument("template/lo/hi must have 9 entries");
        for (int i = 0; i < 9; ++i) {
            cfg.constraints.residue[static_cast<size_t>(i)] = tmpl[static_cast<size_t>(i)];
            cfg.constraints.lo[static_cast<size_t>(i)] = lo[static_cast<size_t>(i)];
            cfg.constraints.hi[static_cast<size_t>(i)] = hi[static_cast<size_t>(i)];
        }
        if (j.contains("prune")) cfg.prune = j.at("prune").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed search config: ") + e.what());
    }
    cfg.constraints.validate();
    return cfg;
}

inline ojson search_config_to_json(const LinkingSearchConfig& cfg) {
    ojson j;
    j["m"] = cfg.m;
    j["q"] = cfg.q;
    j["modulus"] = cfg.constraints.modulus;
    j["template"] = cfg.constraints.residue;
    j["lo"] = cfg.constraints.lo;
    j["hi"] = cfg.constraints.hi;
    j["prune"] = cfg.prune;
    return j;
}

}  // namespace sigfix::io
