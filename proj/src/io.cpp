#include "corrkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace corrkit {

using nlohmann::json;

DensityMatrix state_from_json(const json& j, const Tolerances& tol) {
    try {
        if (!j.is_object() || !j.contains("dims")) throw Error("bad_state_file", "state needs a \"dims\" array");
        ModeStructure s(j.at("dims").get<std::vector<int>>());
        const std::size_t n = s.n();
        Mat m = Mat::Zero(n, n);
        if (j.contains("diag")) {
            auto p = j.at("diag").get<std::vector<double>>();
            if (p.size() != n) throw Error("bad_state_file", "diag length does not match dims");
            for (std::size_t i = 0; i < n; ++i) m(i, i) = p[i];
        } else if (j.contains("matrix")) {
            const auto& rows = j.at("matrix");
            if (!rows.is_array() || rows.size() != n) throw Error("bad_state_file", "matrix needs n rows");
            for (std::size_t r = 0; r < n; ++r) {
                const auto& row = rows[r];
                if (!row.is_array() || row.size() != n) throw Error("bad_state_file", "matrix row " + std::to_string(r + 1) + " needs n entries");
                for (std::size_t c = 0; c < n; ++c) {
                    const auto& e = row[c];
                    if (e.is_number())
                        m(r, c) = e.get<double>();
                    else if (e.is_array() && e.size() == 2)
                        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
                    else
                        throw Error("bad_state_file", "entries must be [re,im] pairs");
                }
            }
        } else {
            throw Error("bad_state_file", "state needs \"matrix\" or \"diag\"");
        }
        return DensityMatrix(s, m, tol);
    } catch (const json::exception& e) {
        throw Error("bad_state_file", e.what());
    }
}

json state_to_json(const DensityMatrix& rho) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c)
            row.push_back({sig12(rho.matrix()(r, c).real()), sig12(rho.matrix()(r, c).imag())});
        rows.push_back(row);
    }
    return {{"dims", rho.structure().dims()}, {"matrix", rows}};
}

DensityMatrix load_state(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("bad_state_file", std::string("JSON parse error: ") + e.what());
    }
    return state_from_json(j, tol);
}

json array_to_json(const MulticorrelanceArray& arr) {
    json groups = json::array();
    for (const auto& g : arr.groups) {
        json rows = json::array();
        for (const auto& r : g.rows) {
            json row = json::array();
            for (double x : r) row.push_back(sig12(x));
            rows.push_back(row);
        }
        groups.push_back({{"modes", g.modes}, {"rows", rows}});
    }
    return {{"groups", groups}};
}

double sig12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double y = std::strtod(buf, nullptr);
    return y == 0.0 ? 0.0 : y;  // no "-0"
}

}  // namespace corrkit
