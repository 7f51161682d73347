#pragma once

#include "corrkit/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace corrkit {

struct DataSet {
    Eigen::MatrixXd X;  // n_S rows, one column per variable
    std::vector<std::string> names;
    std::vector<std::pair<double, double>> bounds;  // optional declared [x_min, x_max] per column

    int N() const { return static_cast<int>(X.cols()); }
    std::size_t samples() const { return static_cast<std::size_t>(X.rows()); }
};

enum class BoundsMode { Declared, DataExtremes };

struct QuantizationPlan {
    std::vector<int> bins;
    std::vector<std::vector<double>> edges;  // bins[m] + 1 per variable
    std::vector<std::vector<double>> reps;   // bin midpoints
};

// Declared falls back to data extremes for columns without declared bounds
QuantizationPlan make_plan(const DataSet& data, const std::vector<int>& bins, BoundsMode mode = BoundsMode::Declared);

int bin_of(double x, const std::vector<double>& edges);  // 1-based
std::vector<std::vector<int>> bin_indices(const DataSet& data, const QuantizationPlan& plan);
Eigen::MatrixXd quantize(const DataSet& data, const QuantizationPlan& plan);
DensityMatrix build_density(const DataSet& data, const QuantizationPlan& plan);

double pearson(const DataSet& data, int a, int b);  // 0-based columns

// 'a' rand,rand  'b' t, (1+cos 2 pi t)/2  'c' t,t  'd' round t, round t
DataSet scenario(char kind, std::size_t points, double noise, std::uint64_t seed);

DataSet read_csv(const std::string& path);

}  // namespace corrkit
