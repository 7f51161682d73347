#pragma once

#include "corrkit/state.hpp"

#include <vector>

namespace corrkit {

// {p_j, rho_j} with shape D = (D_1..D_N); member j (1-based scalar) has vector
// index inverse_register(j, shape)
class Decomposition {
public:
    Decomposition(ModeStructure s, std::vector<int> shape, std::vector<double> p, std::vector<DensityMatrix> states,
                  const Tolerances& tol = {});
    // skips the purity and probability checks
    static Decomposition unchecked(ModeStructure s, std::vector<int> shape, std::vector<double> p,
                                   std::vector<DensityMatrix> states);

    const ModeStructure& structure() const noexcept { return s_; }
    const std::vector<int>& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& probabilities() const noexcept { return p_; }
    const std::vector<DensityMatrix>& states() const noexcept { return states_; }
    DensityMatrix parent() const;

private:
    Decomposition() = default;
    ModeStructure s_;
    std::vector<int> shape_;
    std::vector<double> p_;
    std::vector<DensityMatrix> states_;
};

enum class ShapeBound { RankSquared, DimSquared };

struct ShapeSet {
    int D = 0;
    std::vector<std::vector<int>> shapes;  // lexicographic
};

// every D in r..bound with at least one factorization D = prod D_m, D_m <= n_m^2
std::vector<ShapeSet> enumerate_shapes(const ModeStructure& s, int r, ShapeBound bound = ShapeBound::RankSquared);

Mat fourier_unitary(int D);
Mat permutation_unitary(const std::vector<int>& perm);  // 0-based: row j has its 1 in column perm[j]

Decomposition spectral_decomposition(const DensityMatrix& rho, const Tolerances& tol = {});
Decomposition unitary_decomposition(const DensityMatrix& rho, const Mat& U, const std::vector<int>& shape,
                                    const Tolerances& tol = {}, ShapeBound bound = ShapeBound::RankSquared);

std::vector<Mat> mu_states(const Decomposition& d);
double unoptimized_statance(const Decomposition& d);
std::vector<double> q_products(const std::vector<double>& p, const std::vector<int>& shape);
double unoptimized_probablance(const Decomposition& d);

struct ClassicalResult {
    double value = 0;
    std::vector<int> permutation;  // member j -> support entry (0-based, support ascending)
    std::vector<int> shape;
};

// exhaustive search over r! permutation decompositions of a diagonal state
ClassicalResult classical_statance(const DensityMatrix& rho, int r_max = 8, const Tolerances& tol = {});
ClassicalResult classical_probablance(const DensityMatrix& rho, int r_max = 8, const Tolerances& tol = {});

}  // namespace corrkit
