#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "conezar/chow.hpp"
#include "conezar/fan.hpp"
#include "conezar/polar.hpp"
#include "conezar/quadratic.hpp"

namespace conezar {

using Json = nlohmann::ordered_json;

/// Splits "1,2/3,-0.5" into exact rational coordinates.
inline RatVec parse_vector(const std::string& text) {
    RatVec out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) out.push_back(parse_rat(token));
    if (out.empty()) throw ConfigError("empty vector literal '" + text + "'");
    return out;
}

/// Fixed-width scientific-free formatting, 12 significant digits.
inline std::string format_sig(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::string(buf);
}

inline Json json_rat_vec(const RatVec& v) {
    Json a = Json::array();
    for (const Rat& r : v) a.push_back(format_rat(r));
    return a;
}

inline Json json_vec(const Vec& v) {
    Json a = Json::array();
    for (int i = 0; i < int(v.size()); ++i) a.push_back(v[i]);
    return a;
}

inline RatVec rat_vec_from_json(const Json& a) {
    RatVec out;
    for (const auto& e : a) {
        if (e.is_string())
            out.push_back(parse_rat(e.get<std::string>()));
        else if (e.is_number_integer())
            out.push_back(Rat(e.get<long long>()));
        else
            out.push_back(parse_rat(e.dump()));
    }
    return out;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

inline Fan fan_from_json(const Json& j) {
    if (!j.contains("dim") || !j.contains("rays") || !j.contains("max_cones"))
        throw ConfigError("fan file needs dim, rays and max_cones");
    int dim = j.at("dim").get<int>();
    std::vector<RatVec> rays;
    for (const auto& row : j.at("rays")) rays.push_back(rat_vec_from_json(row));
    std::vector<std::vector<int>> cones;
    for (const auto& row : j.at("max_cones"))
        cones.push_back(row.get<std::vector<int>>());
    for (const auto& c : cones)
        for (int idx : c)
            if (idx < 0 || idx >= int(rays.size()))
                throw ConfigError("max_cones references a missing ray");
    return make_fan(dim, std::move(rays), std::move(cones));
}

inline Json cone_to_json(const PolyhedralCone& c) {
    Json a = Json::array();
    for (const RatVec& g : c.minimal_generators()) a.push_back(json_rat_vec(g));
    return a;
}

inline PolyhedralCone cone_from_json(const Json& a, int dim) {
    std::vector<RatVec> gens;
    for (const auto& row : a) gens.push_back(rat_vec_from_json(row));
    return PolyhedralCone::from_generators(dim, gens);
}

inline Json chow_to_json(const ChowModel& m) {
    Json j;
    j["n"] = m.n;
    j["div_basis"] = m.divisor_labels;
    j["curve_basis"] = m.curve_labels;
    Json pairing = Json::array();
    for (int i = 0; i < m.rho; ++i) {
        Json row = Json::array();
        for (int k = 0; k < m.rho; ++k) row.push_back(format_rat(m.pairing(i, k)));
        pairing.push_back(row);
    }
    j["pairing"] = pairing;
    Json tensor = Json::array();
    for (const auto& [idx, value] : m.tensor.entries()) {
        Json entry;
        entry["index"] = idx;
        entry["value"] = format_rat(value);
        tensor.push_back(entry);
    }
    j["tensor"] = tensor;
    Json cones;
    cones["nef"] = cone_to_json(m.nef_div);
    cones["eff_div"] = cone_to_json(m.eff_div);
    cones["eff_curve"] = cone_to_json(m.eff_cur);
    j["cones"] = cones;
    return j;
}

inline ChowModel chow_from_json(const Json& j) {
    for (const char* key : {"n", "div_basis", "curve_basis", "pairing",
                            "tensor", "cones"})
        if (!j.contains(key))
            throw ConfigError(std::string("model file needs field '") + key +
                              "'");
    ChowModel m;
    m.n = j.at("n").get<int>();
    m.divisor_labels = j.at("div_basis").get<std::vector<std::string>>();
    m.curve_labels = j.at("curve_basis").get<std::vector<std::string>>();
    m.rho = int(m.divisor_labels.size());
    if (int(m.curve_labels.size()) != m.rho)
        throw ConfigError("divisor and curve bases differ in length");
    m.pairing = RatMat(m.rho, m.rho);
    const Json& rows = j.at("pairing");
    if (int(rows.size()) != m.rho)
        throw ConfigError("pairing matrix does not match the basis size");
    for (int i = 0; i < m.rho; ++i) {
        RatVec row = rat_vec_from_json(rows.at(i));
        if (int(row.size()) != m.rho)
            throw ConfigError("pairing matrix does not match the basis size");
        for (int k = 0; k < m.rho; ++k) m.pairing(i, k) = row[std::size_t(k)];
    }
    m.tensor = SymTensor(m.n, m.rho);
    for (const auto& entry : j.at("tensor")) {
        std::vector<int> idx = entry.at("index").get<std::vector<int>>();
        m.tensor.set(std::move(idx), parse_rat(entry.at("value").get<std::string>()));
    }
    const Json& cones = j.at("cones");
    m.nef_div = cone_from_json(cones.at("nef"), m.rho);
    m.eff_div = cone_from_json(cones.at("eff_div"), m.rho);
    m.eff_cur = cone_from_json(cones.at("eff_curve"), m.rho);
    m.mov_cur = m.eff_div.dual(m.pairing.transposed());
    return finish_model(std::move(m));
}

struct QuadraticFile {
    QuadraticModel model;
    std::string mode;
};

inline QuadraticFile quadratic_from_json(const Json& j) {
    for (const char* key : {"n", "q", "cone", "mode"})
        if (!j.contains(key))
            throw ConfigError(std::string("quadratic file needs field '") +
                              key + "'");
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "surface" && mode != "hyperkahler")
        throw ConfigError("quadratic mode must be surface or hyperkahler");
    int n = j.at("n").get<int>();
    if (mode == "surface" && n != 2)
        throw ConfigError("surface mode requires n = 2");
    const Json& qrows = j.at("q");
    int rho = int(qrows.size());
    RatMat q(rho, rho);
    for (int i = 0; i < rho; ++i) {
        RatVec row = rat_vec_from_json(qrows.at(i));
        if (int(row.size()) != rho)
            throw ConfigError("quadratic form must be square");
        for (int k = 0; k < rho; ++k) q(i, k) = row[std::size_t(k)];
    }
    std::vector<RatVec> gens;
    for (const auto& row : j.at("cone")) gens.push_back(rat_vec_from_json(row));
    PolyhedralCone cone = PolyhedralCone::from_generators(rho, gens);
    return QuadraticFile{make_quadratic(n, std::move(q), std::move(cone)), mode};
}

inline Json residuals_to_json(const ZariskiResiduals& r) {
    Json j;
    j["orthogonality"] = r.orthogonality;
    j["eff_margin"] = r.eff_margin;
    j["vol_gap"] = r.vol_gap;
    j["mov_margin"] = r.mov_margin;
    return j;
}

inline Json result_to_json(const ZariskiResult& z) {
    Json j;
    j["alpha"] = json_vec(z.alpha);
    j["B"] = json_vec(z.B);
    j["positive_part"] = json_vec(z.positive_part);
    j["gamma"] = json_vec(z.gamma);
    j["volhat"] = z.volhat;
    j["residuals"] = residuals_to_json(z.residuals);
    j["restarts"] = z.restarts;
    j["seed"] = z.seed;
    return j;
}

/// One CSV row of 12-significant-digit columns.
inline std::string csv_row(const std::vector<double>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ",";
        line += format_sig(cells[i]);
    }
    line += "\n";
    return line;
}

}  // namespace conezar
