#include "corrkit/classical.hpp"
#include "corrkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace corrkit {

QuantizationPlan make_plan(const DataSet& data, const std::vector<int>& bins, BoundsMode mode) {
    if (static_cast<int>(bins.size()) != data.N()) throw Error("bad_plan", "need one bin count per variable");
    if (data.samples() == 0) throw Error("empty_data", "dataset has no rows");
    QuantizationPlan plan;
    plan.bins = bins;
    for (int m = 0; m < data.N(); ++m) {
        const int nm = bins[m];
        if (nm < 1) throw Error("bad_plan", "bin counts must be >= 1");
        double lo = data.X.col(m).minCoeff(), hi = data.X.col(m).maxCoeff();
        if (mode == BoundsMode::Declared && m < static_cast<int>(data.bounds.size())) {
            lo = data.bounds[m].first;
            hi = data.bounds[m].second;
        }
        if (!(hi >= lo)) throw Error("bad_bounds", "upper bound below lower bound");
        if (hi == lo && nm > 1) throw Error("bad_bounds", "column " + std::to_string(m + 1) + " has zero range but several bins");
        std::vector<double> e(nm + 1);
        for (int k = 0; k <= nm; ++k) e[k] = lo + (hi - lo) / nm * k;
        e[nm] = hi;
        std::vector<double> r(nm);
        for (int k = 0; k < nm; ++k) r[k] = 0.5 * (e[k] + e[k + 1]);
        plan.edges.push_back(std::move(e));
        plan.reps.push_back(std::move(r));
    }
    return plan;
}

int bin_of(double x, const std::vector<double>& edges) {
    // interior edges e_2..e_n are left-closed; anything outside goes to an end bin
    const int nm = static_cast<int>(edges.size()) - 1;
    if (nm <= 1) return 1;
    auto first = edges.begin() + 1, last = edges.end() - 1;
    return 1 + static_cast<int>(std::upper_bound(first, last, x) - first);
}

std::vector<std::vector<int>> bin_indices(const DataSet& data, const QuantizationPlan& plan) {
    if (static_cast<int>(plan.bins.size()) != data.N()) throw Error("bad_plan", "plan width does not match data");
    std::vector<std::vector<int>> out(data.samples(), std::vector<int>(data.N()));
    for (std::size_t j = 0; j < data.samples(); ++j)
        for (int m = 0; m < data.N(); ++m) out[j][m] = bin_of(data.X(j, m), plan.edges[m]);
    return out;
}

Eigen::MatrixXd quantize(const DataSet& data, const QuantizationPlan& plan) {
    auto idx = bin_indices(data, plan);
    Eigen::MatrixXd q(data.X.rows(), data.X.cols());
    for (std::size_t j = 0; j < data.samples(); ++j)
        for (int m = 0; m < data.N(); ++m) q(j, m) = plan.reps[m][idx[j][m] - 1];
    return q;
}

DensityMatrix build_density(const DataSet& data, const QuantizationPlan& plan) {
    if (data.samples() == 0) throw Error("empty_data", "dataset has no rows");
    const ModeStructure s(plan.bins);
    std::vector<double> counts(s.n(), 0.0);
    for (const auto& a : bin_indices(data, plan)) counts[register_index(a, s) - 1] += 1.0;
    Mat m = Mat::Zero(s.n(), s.n());
    for (std::size_t i = 0; i < s.n(); ++i) m(i, i) = counts[i] / static_cast<double>(data.samples());
    return DensityMatrix::unchecked(s, m);
}

double pearson(const DataSet& data, int a, int b) {
    if (a < 0 || b < 0 || a >= data.N() || b >= data.N()) throw Error("out_of_range", "column index out of range");
    const double nS = static_cast<double>(data.samples());
    if (data.samples() < 2) throw Error("undefined_correlation", "need at least two samples");
    auto x = data.X.col(a), y = data.X.col(b);
    const double mx = x.mean(), my = y.mean();
    const double cov = ((x.array() - mx) * (y.array() - my)).sum() / (nS - 1);
    const double sx = std::sqrt((x.array() - mx).square().sum() / (nS - 1));
    const double sy = std::sqrt((y.array() - my).square().sum() / (nS - 1));
    if (sx == 0 || sy == 0) throw Error("undefined_correlation", "zero standard deviation");
    return cov / (sx * sy);
}

DataSet scenario(char kind, std::size_t points, double noise, std::uint64_t seed) {
    if (kind < 'a' || kind > 'd') throw Error("bad_scenario", std::string("unknown scenario '") + kind + "'");
    Rng rng(seed, static_cast<std::uint64_t>(kind));
    DataSet d;
    d.X.resize(points, 2);
    d.names = {"x", "y"};
    for (std::size_t j = 0; j < points; ++j) {
        const double t = rng.uniform();
        double x = t, y = t;
        switch (kind) {
            case 'a': y = rng.uniform(); break;
            case 'b': y = 0.5 * (1 + std::cos(2 * M_PI * t)); break;
            case 'c': break;
            case 'd': x = y = std::round(t); break;
        }
        d.X(j, 0) = x + rng.uniform(-noise, noise);
        d.X(j, 1) = y + rng.uniform(-noise, noise);
    }
    return d;
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool q = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (q) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                q = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            q = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

DataSet read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("io", "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty_data", "csv has no header");
    DataSet d;
    d.names = split_row(line);
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto f = split_row(line);
        if (f.size() != d.names.size()) throw Error("bad_csv", "row " + std::to_string(lineno) + " has the wrong field count");
        std::vector<double> r;
        for (const auto& s : f) {
            try {
                std::size_t used = 0;
                r.push_back(std::stod(s, &used));
                if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
            } catch (const std::exception&) {
                throw Error("bad_csv", "non-numeric field '" + s + "' on row " + std::to_string(lineno));
            }
            if (!std::isfinite(r.back())) throw Error("bad_csv", "non-finite value on row " + std::to_string(lineno));
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw Error("empty_data", "csv has no data rows");
    d.X.resize(rows.size(), d.names.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) d.X(i, j) = rows[i][j];
    return d;
}

}  // namespace corrkit
