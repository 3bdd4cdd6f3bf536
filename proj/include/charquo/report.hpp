#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "charvar.hpp"
#include "qrep.hpp"
#include "witness.hpp"

namespace charquo {

using json = nlohmann::json;

inline json mat_json(const Mat2& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

inline json to_json(const AssumptionReport& r) {
    json j;
    j["class_gamma"] = r.class_gamma;
    j["class_delta"] = r.class_delta;
    j["split_nonsplit"] = r.nonconj;
    j["unipotent_steps"] = r.unipotent_steps;
    j["distinct_unipotent_subgroups"] = r.distinct_subgroups;
    j["point"] = r.point_assumption;
    j["order_gamma"] = r.order_gamma;
    j["order_delta"] = r.order_delta;
    j["order_above_60"] = r.large_orders;
    j["generation"] = r.generation ? json(*r.generation) : json(nullptr);
    j["generation_method"] = r.generation_method;
    return j;
}

inline json to_json(const WitnessConfig& c) {
    json j;
    j["p"] = c.F.p();
    j["u"] = mat_json(c.u);
    j["v"] = mat_json(c.v);
    j["w"] = mat_json(c.w);
    j["gamma"] = mat_json(c.gamma);
    j["delta"] = mat_json(c.delta);
    j["trace_gamma"] = trace(c.F, c.gamma);
    j["trace_delta"] = trace(c.F, c.delta);
    json P = json::array();
    for (const auto& m : c.P) P.push_back(mat_json(m));
    j["P"] = P;
    json t;
    const TraceTuple tt = from_quad(c.F, c.P);
    for (int i = 0; i < 7; ++i) t[kTraceNames[i]] = tt[i];
    j["traces_P"] = t;
    return j;
}

inline const char* to_string(PipelineStatus s) {
    switch (s) {
        case PipelineStatus::Ok: return "ok";
        case PipelineStatus::Precondition: return "precondition";
        case PipelineStatus::Budget: return "budget";
        case PipelineStatus::Internal: return "internal";
    }
    return "?";
}

inline const std::vector<std::string>& pipeline_generator_names() {
    static const std::vector<std::string> v{"sigma1", "sigma2", "sigma3", "epsilon"};
    return v;
}

/// timings_ms is left empty unless requested, so reports are byte-stable.
inline json to_json(const QuotientReport& r, bool with_timings = false) {
    json j;
    j["p"] = r.p;
    j["n"] = r.n;
    j["x_count"] = r.x_count ? json(*r.x_count) : json(nullptr);
    j["orbit_ratio"] = r.x_count && *r.x_count ? json(double(r.n) / double(*r.x_count)) : json(nullptr);
    j["classification"] = to_string(r.classification);
    j["classification_method"] = r.classification_method;
    j["generator_signs"] = r.generator_signs;
    j["f2_verdict"] = r.f2_verdict;
    j["f2_justification"] = r.f2_justification;
    j["x_nontrivial"] = r.x_nontrivial;
    if (r.certificate) {
        j["certificate"] = {{"word", r.certificate->word},
                            {"q", r.certificate->q},
                            {"trial", r.certificate->trial},
                            {"generators", pipeline_generator_names()}};
    } else {
        j["certificate"] = nullptr;
    }
    j["giant_trials"] = r.giant_trials;
    j["seed"] = r.seed;
    j["assumptions"] = r.assumptions ? to_json(*r.assumptions) : json(nullptr);
    j["key_mode"] = r.key_mode;
    if (r.key_agreement)
        j["key_agreement"] = {{"injective", r.key_agreement->injective},
                              {"closed", r.key_agreement->closed},
                              {"checked_images", r.key_agreement->checked_images}};
    j["cycle_orders_match"] = r.cycle_orders_ok;
    j["all_sigma1_types"] = r.all_sigma1_types;
    j["status"] = to_string(r.status);
    j["stage"] = r.stage;
    j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
    j["timings_ms"] = with_timings ? json(r.timings_ms) : json::object();
    return j;
}

// ---------------------------------------------------------------------------
// qrep export

inline json laurent_json(const LP& x) {
    json a = json::array();
    for (const auto& t : x.terms()) a.push_back({t.c, t.m.eq, t.m.es});
    return a;
}

inline json entry_json(const LP& x) { return {{"num", laurent_json(x)}, {"den", laurent_json(LP(1))}}; }
inline json entry_json(const RationalFn2& x) { return {{"num", laurent_json(x.num())}, {"den", laurent_json(x.den())}}; }

template <class T>
json matrix_json(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(entry_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline json modmatrix_json(const ModMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline json export_json(const RepMatrices& rep, const std::optional<Intertwiner>& J,
                        const std::optional<Specialization>& sp) {
    json j;
    j["n"] = rep.n;
    j["l"] = rep.l;
    json comps = json::array();
    for (auto f : rep.W.free_index) comps.push_back(rep.W.V.comps[f]);
    j["w_basis_leading_compositions"] = comps;
    json sig = json::array();
    for (const auto& s : rep.sigma) sig.push_back(matrix_json(s));
    j["sigma"] = sig;
    j["denominators"] = "none";  // all braid matrices are Laurent in this basis
    if (J) j["J"] = matrix_json(J->J);
    if (sp) {
        json s;
        s["modulus"] = sp->r;
        s["q0"] = sp->q0;
        s["s0"] = sp->s0;
        json ms = json::array();
        for (const auto& m : sp->sigma) ms.push_back(modmatrix_json(m));
        s["sigma"] = ms;
        if (sp->J) s["J"] = modmatrix_json(*sp->J);
        j["specialized"] = s;
    }
    return j;
}

inline json to_json(const Specialization& sp) {
    return {{"modulus", sp.r},
            {"q0", sp.q0},
            {"s0", sp.s0},
            {"relations", sp.relations},
            {"sigma1_ne_sigma3_projectively", sp.sigma1_ne_sigma3},
            {"x_nonscalar", sp.x_nonscalar},
            {"absolutely_irreducible", sp.absolutely_irreducible},
            {"j_intertwines", sp.J ? json(sp.j_intertwines) : json(nullptr)},
            {"surjectivity", "not checked"}};
}

inline json to_json(const QrepVerification& v) {
    json j;
    j["n"] = v.n;
    j["l"] = v.l;
    j["dim_V"] = v.dim_V;
    j["dim_W"] = v.dim_W;
    json checks = json::array();
    for (const auto& c : v.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = checks;
    j["all_pass"] = v.all_pass();
    j["eigenvalue"] = v.eigenvalue ? json(v.eigenvalue->to_string()) : json(nullptr);
    return j;
}

/// Writes through a temporary file and rename.
inline void write_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + tmp);
        os << text;
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("rename failed: " + path);
}

}  // namespace charquo
