// JSON input (complexes, groups, orbifolds) and report serialization.
#pragma once

#include "orbiconf/comma.hpp"
#include "orbiconf/maps.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace orbiconf {

using Json = nlohmann::json;

namespace detail {
inline const Json& require(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing \"" + key + "\"");
    return j.at(key);
}

inline uint32_t as_index(const Json& j, const char* what) {
    if (!j.is_number_integer() || j.get<int64_t>() < 0 || j.get<int64_t>() > int64_t(UINT32_MAX))
        throw InputError(std::string(what) + ": expected a non-negative integer");
    return j.get<uint32_t>();
}

inline std::vector<uint32_t> as_index_list(const Json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + ": expected an array");
    std::vector<uint32_t> out;
    for (const auto& x : j) out.push_back(as_index(x, what));
    return out;
}
} // namespace detail

// {"vertices": N, "facets": [[v, ...], ...]}; faces of facets are added.
inline SimplicialComplex parse_complex(const Json& j) {
    uint32_t nv = detail::as_index(detail::require(j, "vertices", "complex"), "complex.vertices");
    const Json& fs = detail::require(j, "facets", "complex");
    if (!fs.is_array()) throw InputError("complex.facets: expected an array");
    std::vector<Simplex> facets;
    for (const auto& f : fs) {
        Simplex s = detail::as_index_list(f, "complex.facets");
        if (s.empty()) throw InputError("complex.facets: empty facet");
        if (s.size() > 24) throw InputError("complex.facets: facet dimension above 23");
        for (uint32_t v : s)
            if (v >= nv) throw InputError("complex.facets: vertex " + std::to_string(v) + " out of range");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("complex.facets: repeated vertex");
        facets.push_back(std::move(s));
    }
    return SimplicialComplex::from_facets(nv, facets);
}

// {"generators": [[image list], ...]} acting on {0..degree-1}.
inline FiniteGroup parse_group(const Json& j, uint32_t degree, size_t capacity = 1'000'000) {
    const Json& gs = detail::require(j, "generators", "group");
    if (!gs.is_array()) throw InputError("group.generators: expected an array");
    std::vector<Perm> gens;
    for (const auto& g : gs) {
        Perm p = detail::as_index_list(g, "group.generators");
        if (p.size() != degree || !is_permutation(p))
            throw InputError("group.generators: not a permutation of the " + std::to_string(degree) + " vertices");
        gens.push_back(std::move(p));
    }
    return FiniteGroup::generated_by(degree, gens, capacity);
}

// Default subdivision level when the input names none.
inline constexpr size_t default_subdivision = 2;

// {"complex": ..., "group": ..., "subdiv": r, "boundary_vertices": [...],
//  "stab": {"nested_copy_vertices": [...], "iso": [...], "base_cell": v}}.
// A bare complex document is accepted as [M/1].
inline GlobalQuotientOrbifold parse_orbifold(const Json& j, std::optional<size_t> subdiv = std::nullopt) {
    if (!j.is_object()) throw InputError("orbifold: expected a JSON object");
    const Json& cj = j.contains("complex") ? j.at("complex") : j;
    SimplicialComplex m = parse_complex(cj);
    FiniteGroup g = j.contains("group") ? parse_group(j.at("group"), m.vertex_count()) : FiniteGroup::trivial(m.vertex_count());
    size_t r = default_subdivision;
    if (j.contains("subdiv")) r = detail::as_index(j.at("subdiv"), "subdiv");
    if (subdiv) r = *subdiv;
    std::optional<std::vector<uint32_t>> bv;
    if (j.contains("boundary_vertices")) bv = detail::as_index_list(j.at("boundary_vertices"), "boundary_vertices");
    std::optional<StabilisationRequest> stab;
    if (j.contains("stab")) {
        const Json& s = j.at("stab");
        StabilisationRequest req;
        req.base_vertex = detail::as_index(detail::require(s, "base_cell", "stab"), "stab.base_cell");
        if (s.contains("nested_copy_vertices"))
            req.nested_copy = detail::as_index_list(s.at("nested_copy_vertices"), "stab.nested_copy_vertices");
        if (s.contains("iso")) req.retraction = detail::as_index_list(s.at("iso"), "stab.iso");
        stab = std::move(req);
    }
    return GlobalQuotientOrbifold(std::move(m), std::move(g), r, std::move(bv), std::move(stab));
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// trivial, sign, orientation (omega_n), or (prod of or_M(g_i)).
inline WreathCharacter character_by_name(const GlobalQuotientOrbifold& x, const std::string& name) {
    if (name == "trivial") return {};
    if (name == "sign") return WreathCharacter{"sign", 1, {}};
    if (name == "orientation") return x.orientation_character();
    if (name == "or") return WreathCharacter{"or", 0, x.orientation_signs()};
    throw InputError("unknown character \"" + name + "\" (trivial, sign, orientation, or)");
}

// ---------------------------------------------------------------------------
// Serialization. Json objects keep keys sorted, so dumps are canonical.

inline Json to_json(const HomologyReport& r, size_t n, const std::string& coefficients,
                    std::optional<size_t> stratum = std::nullopt) {
    Json j;
    j["n"] = n;
    j["coefficients"] = coefficients;
    j["betti"] = r.betti;
    Json t = Json::array();
    for (const auto& deg : r.torsion) {
        Json row = Json::array();
        for (const auto& f : deg) row.push_back(f.to_string());
        t.push_back(row);
    }
    j["torsion"] = t;
    j["stratum"] = stratum ? Json(*stratum) : Json(nullptr);
    return j;
}

inline Json to_json(const QMatrix& m) {
    Json rows = Json::array();
    auto d = m.to_dense();
    for (const auto& row : d) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(v.to_string());
        rows.push_back(r);
    }
    return rows;
}

inline Json to_json(const Verdict& v) {
    Json j;
    j["relation"] = v.relation;
    j["n"] = v.n;
    j["m"] = v.m;
    j["degree"] = v.degree;
    j["pass"] = v.pass;
    j["lhs"] = to_json(v.lhs);
    j["rhs"] = to_json(v.rhs);
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

inline Json to_json(const StabilityReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json j;
        j["n"] = row.n;
        j["degree"] = row.degree;
        j["dim_n"] = row.dim_n;
        j["dim_next"] = row.dim_next;
        j["in_range"] = row.in_range;
        j["map"] = row.map;
        j["map_rank"] = row.map_rank;
        j["pass"] = row.pass;
        j["stratum"] = row.stratum ? Json(*row.stratum) : Json(nullptr);
        rows.push_back(j);
    }
    return Json{{"rows", rows}, {"warnings", r.warnings}, {"pass", r.pass()}};
}

inline Json to_json(const DualityReport& r) {
    return Json{{"n", r.n}, {"dimension", r.dimension}, {"homology", r.homology},
                {"cohomology_c", r.cohomology_c}, {"pass", r.pass}};
}

inline Json to_json(const ChiCReport& r) {
    return Json{{"n", r.n}, {"total", r.total}, {"strata", r.strata}, {"strata_sum", r.strata_sum()},
                {"pass", r.additive()}};
}

inline Json to_json(const CommaReport& r) {
    bool pass = r.skeleta_ok && r.invariance_ok;
    return Json{{"n", r.n},
                {"m", r.m},
                {"base_objects", r.base_objects},
                {"expected", r.expected},
                {"skeleton_size", r.skeleton_size},
                {"discrete", r.skeleta_ok},
                {"invariance_checked", r.invariance_checked},
                {"invariance_pass", r.invariance_ok},
                {"pass", pass}};
}

// A markdown table from an array of flat objects, columns in key order.
inline std::string markdown_table(const Json& rows) {
    if (!rows.is_array() || rows.empty()) return "(empty)\n";
    std::vector<std::string> cols;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) cols.push_back(it.key());
    std::ostringstream out;
    out << "|";
    for (const auto& c : cols) out << " " << c << " |";
    out << "\n|";
    for (size_t i = 0; i < cols.size(); ++i) out << "---|";
    out << "\n";
    for (const auto& r : rows) {
        out << "|";
        for (const auto& c : cols) {
            const Json& v = r.contains(c) ? r.at(c) : Json(nullptr);
            out << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << " |";
        }
        out << "\n";
    }
    return out.str();
}

} // namespace orbiconf
