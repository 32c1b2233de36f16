#pragma once

// JSON serialization for every file format the CLI reads and writes: field
// descriptors, bimaps, groups, subspaces, and the recognize / isotest /
// census / invariants reports. All emission is key-sorted and hence
// byte-deterministic for identical inputs.

#include <fstream>
#include <json.hpp>
#include <string>

#include "heiq/census.hpp"
#include "heiq/group.hpp"
#include "heiq/invariants.hpp"
#include "heiq/isotest.hpp"
#include "heiq/recognize.hpp"

namespace heiq {

using Json = nlohmann::json;

// ---- field descriptor: {"p": 3, "d": 5, "modulus": [c0, ..., 1]} ----------

inline Json field_to_json(const FieldCtx& ctx) {
    return Json{{"p", ctx.p}, {"d", ctx.d}, {"modulus", ctx.modulus}};
}

inline FieldCtxPtr field_from_json(const Json& j) {
    Poly modulus = j.at("modulus").get<Poly>();
    if (poly_deg(modulus) != j.at("d").get<int>()) throw error("field: modulus degree != d");
    return make_field(j.at("p").get<std::int64_t>(), std::move(modulus));
}

// ---- tensors ---------------------------------------------------------------

inline Json tensor_to_json(const PBimap& b) {
    Json t = Json::array();
    for (int i = 0; i < b.dim_u; ++i) {
        Json row = Json::array();
        for (int j = 0; j < b.dim_v; ++j) {
            Json w = Json::array();
            for (int k = 0; k < b.dim_w; ++k) w.push_back(b.at(i, j, k));
            row.push_back(std::move(w));
        }
        t.push_back(std::move(row));
    }
    return t;
}

inline void tensor_from_json(const Json& t, PBimap& b, std::int64_t p) {
    if (static_cast<int>(t.size()) != b.dim_u) throw error("tensor: row count mismatch");
    for (int i = 0; i < b.dim_u; ++i) {
        if (static_cast<int>(t[i].size()) != b.dim_v) throw error("tensor: column count mismatch");
        for (int j = 0; j < b.dim_v; ++j) {
            if (static_cast<int>(t[i][j].size()) != b.dim_w) throw error("tensor: W length mismatch");
            for (int k = 0; k < b.dim_w; ++k) b.at(i, j, k) = mod_reduce(t[i][j][k].get<std::int64_t>(), p);
        }
    }
}

// ---- bimap: {"p", "dimV", "dimW", "tensor", "kind"} ------------------------

inline Json bimap_to_json(const PBimap& b, std::int64_t p) {
    Json j{{"p", p}, {"dimV", b.dim_v}, {"dimW", b.dim_w}, {"tensor", tensor_to_json(b)},
           {"kind", to_string(b.kind)}};
    if (b.dim_u != b.dim_v) j["dimU"] = b.dim_u;
    return j;
}

inline PBimap bimap_from_json(const Json& j) {
    std::int64_t p = j.at("p").get<std::int64_t>();
    int dv = j.at("dimV").get<int>();
    int du = j.contains("dimU") ? j.at("dimU").get<int>() : dv;
    int dw = j.at("dimW").get<int>();
    std::string kind = j.value("kind", "general");
    BimapKind bk = kind == "alternating" ? BimapKind::alternating
                   : kind == "hermitian" ? BimapKind::hermitian
                                         : BimapKind::general;
    PrimeField k{p};
    PBimap b(k, du, dv, dw, bk);
    tensor_from_json(j.at("tensor"), b, p);
    if (bk == BimapKind::alternating) check_alternating(k, b);
    return b;
}

// ---- group: {"p", "dimV", "dimW", "comm"} ----------------------------------

inline Json group_to_json(const Class2Group& g) {
    return Json{{"p", g.p()}, {"dimV", g.dim_v()}, {"dimW", g.dim_w()},
                {"comm", tensor_to_json(g.comm())}};
}

inline Class2Group group_from_json(const Json& j) {
    std::int64_t p = j.at("p").get<std::int64_t>();
    int dv = j.at("dimV").get<int>();
    int dw = j.at("dimW").get<int>();
    PrimeField k{p};
    PBimap b(k, dv, dv, dw, BimapKind::alternating);
    tensor_from_json(j.at("comm"), b, p);
    check_alternating(k, b);
    return Class2Group(p, b);
}

// ---- subspace: {"p", "ambient", "basis"} -----------------------------------

inline Json subspace_to_json(const Subspace& s) {
    Json rows = Json::array();
    for (int r = 0; r < s.basis.rows; ++r) {
        Json row = Json::array();
        for (int c = 0; c < s.ambient; ++c) row.push_back(s.basis.at(r, c));
        rows.push_back(std::move(row));
    }
    return Json{{"p", s.p}, {"ambient", s.ambient}, {"basis", rows}};
}

inline Subspace subspace_from_json(const Json& j) {
    std::int64_t p = j.at("p").get<std::int64_t>();
    int ambient = j.at("ambient").get<int>();
    const Json& rows = j.at("basis");
    Mat m(static_cast<int>(rows.size()), ambient, 0);
    for (int r = 0; r < m.rows; ++r) {
        if (static_cast<int>(rows[r].size()) != ambient) throw error("subspace: row length mismatch");
        for (int c = 0; c < ambient; ++c) m.at(r, c) = mod_reduce(rows[r][c].get<std::int64_t>(), p);
    }
    return Subspace::from_generators(p, ambient, m);
}

inline Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(m.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- reports ---------------------------------------------------------------

inline Json recognition_to_json(const RecognitionResult& rec, bool verbose) {
    Json j;
    j["status"] = rec.is_quotient ? "quotient" : "not_a_quotient";
    Json stages = Json::array();
    for (const auto& s : rec.stages) stages.push_back(Json{{"name", s.name}, {"ok", s.ok}, {"detail", s.detail}});
    j["stages"] = std::move(stages);
    if (!rec.is_quotient) {
        j["failed_stage"] = rec.failed_stage;
        j["reason"] = rec.reason;
        return j;
    }
    j["p"] = rec.desc.p;
    j["m"] = rec.desc.m;
    j["d"] = rec.desc.d;
    j["field"] = field_to_json(*rec.desc.field);
    j["kernel_basis"] = subspace_to_json(rec.desc.kernel_m)["basis"];
    if (verbose) {
        j["tensor_dim"] = rec.desc.tensor_dim;
        j["involution"] = to_string(rec.desc.involution);
        j["epi_v"] = matrix_to_json(rec.desc.epi_v);
        j["epi_w"] = matrix_to_json(rec.desc.epi_w);
    }
    return j;
}

inline Json iso_to_json(const IsoResult& r) {
    Json j;
    j["verdict"] = !r.decided ? "undecided" : r.isomorphic ? "isomorphic" : "nonisomorphic";
    if (!r.reason.empty()) j["reason"] = r.reason;
    j["transcript"] = r.transcript;
    if (r.witness) {
        j["witness"] = Json{{"galois_exponent", r.witness->galois_exponent},
                            {"scalar", r.witness->scalar.c},
                            {"f", matrix_to_json(r.witness->iso.f)},
                            {"fhat", matrix_to_json(r.witness->iso.fhat)}};
    }
    return j;
}

inline Json census_to_json(const CensusReport& rep) {
    Json orbits = Json::array();
    for (const auto& o : rep.orbits) {
        Json jo{{"representative", subspace_to_json(o.representative)["basis"]},
                {"size", o.size},
                {"floor_m", o.floor_m},
                {"floor_d", o.floor_d}};
        orbits.push_back(std::move(jo));
    }
    return Json{{"p", rep.p},
                {"d", rep.d},
                {"s", rep.s},
                {"n", rep.n},
                {"subspace_count", rep.subspace_count.get_str()},
                {"orbit_count", rep.orbit_count},
                {"lower_bound", Json{{"num", rep.lower_bound.num.get_str()}, {"den", rep.lower_bound.den.get_str()}}},
                {"effective_lower_bound",
                 Json{{"num", rep.effective_bound.num.get_str()}, {"den", rep.effective_bound.den.get_str()}}},
                {"stable_regime", rep.stable_regime},
                {"validated_pairs", rep.validated_pairs},
                {"orbits", std::move(orbits)}};
}

inline Json invariants_to_json(const InvariantProfile& prof) {
    Json ranks = Json::object();
    for (const auto& [r, c] : prof.classes.rank_counts) ranks[std::to_string(r)] = c;
    Json j{{"p", prof.p},
           {"n", prof.n},
           {"exponent", prof.exponent},
           {"camina", Json{{"is_camina", prof.camina.is_camina}, {"exhaustive", prof.camina.exhaustive},
                           {"checked", prof.camina.checked}}},
           {"classes", Json{{"rank_counts", ranks},
                            {"uniform", prof.classes.uniform},
                            {"central_elements", prof.classes.central_elements.get_str()},
                            {"noncentral_centralizer_order",
                             prof.classes.uniform ? prof.classes.noncentral_centralizer_order.get_str() : ""}}},
           {"character_pair", Json{{"index_of_derived", prof.character.index_of_derived.get_str()},
                                   {"derived_order", prof.character.derived_order.get_str()},
                                   {"character_determining", prof.character.character_determining}}},
           {"recognized", prof.recognized}};
    if (prof.recognized) {
        j["floor"] = Json{{"m", prof.floor_m}, {"d", prof.floor_d}};
        j["indecomposability"] = Json{{"direct", prof.indec.directly_indecomposable},
                                      {"central", prof.indec.centrally_indecomposable},
                                      {"central_decomposition_size", prof.indec.central_decomposition_size},
                                      {"type", to_string(prof.indec.type)}};
    }
    return j;
}

// ---- file helpers ----------------------------------------------------------

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace heiq
