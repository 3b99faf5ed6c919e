#include "qchiral/io.hpp"

#include <fstream>

#include "qchiral/bloch.hpp"
#include "qchiral/concurrence.hpp"
#include "qchiral/errors.hpp"
#include "qchiral/sinisterness.hpp"

namespace qchiral {

using nlohmann::json;

DensityMatrix load_state_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open state file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return state_from_json(j);
}

DensityMatrix state_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rho")) {
        throw ParseError("state file must be an object with a \"rho\" field");
    }
    const json& rows = j.at("rho");
    if (!rows.is_array() || rows.size() != 4) {
        throw ParseError("\"rho\" must be a 4x4 array");
    }
    Complex4x4 m;
    for (int r = 0; r < 4; ++r) {
        const json& row = rows.at(static_cast<std::size_t>(r));
        if (!row.is_array() || row.size() != 4) {
            throw ParseError("\"rho\" must be a 4x4 array");
        }
        for (int c = 0; c < 4; ++c) {
            const json& cell = row.at(static_cast<std::size_t>(c));
            if (cell.is_number()) {
                m(r, c) = cplx(cell.get<double>(), 0.0);
            } else if (cell.is_array() && cell.size() == 2 && cell.at(0).is_number() &&
                       cell.at(1).is_number()) {
                m(r, c) = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
            } else {
                throw ParseError("matrix entries must be numbers or [re, im] pairs");
            }
        }
    }
    return make_density(m);
}

json state_to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) {
            row.push_back({rho.m(r, c).real(), rho.m(r, c).imag()});
        }
        rows.push_back(row);
    }
    return json{{"rho", rows}};
}

json analysis_report(const DensityMatrix& rho) {
    const BlochData d = decompose(rho);
    json rep;
    rep["bloch"]["a"] = d.a;
    rep["bloch"]["b"] = d.b;
    json c_rows = json::array();
    for (int r = 0; r < 3; ++r) {
        c_rows.push_back({d.c(r, 0), d.c(r, 1), d.c(r, 2)});
    }
    rep["bloch"]["c"] = c_rows;
    json g_rows = json::array();
    for (int r = 0; r < 4; ++r) {
        g_rows.push_back({d.gamma(r, 0), d.gamma(r, 1), d.gamma(r, 2), d.gamma(r, 3)});
    }
    rep["gamma"] = g_rows;
    rep["purity"] = purity(rho);
    rep["sinisterness"] = sinisterness_checked(rho);

    try {
        const ChiralSVD f = chiral_svd(d.c);
        rep["singular_values"] = f.s;
        rep["detU"] = f.detU;
        rep["detV"] = f.detV;
    } catch (const ChiralityUndefined&) {
        const Svd3 f = svd3(d.c);
        rep["singular_values"] = f.s;
        rep["detU"] = nullptr;
        rep["detV"] = nullptr;
    }
    rep["classification"] = to_string(classify(d.c));
    rep["concurrence"] = concurrence(rho);
    rep["r_eigenvalues"] = r_eigenvalues(rho);
    return rep;
}

}  // namespace qchiral
