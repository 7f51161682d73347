#include "corrkit/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace corrkit {

namespace {

constexpr double kTie = 1e-12;

std::size_t product(const std::vector<int>& v) {
    std::size_t p = 1;
    for (int x : v) p *= static_cast<std::size_t>(x);
    return p;
}

}  // namespace

Decomposition::Decomposition(ModeStructure s, std::vector<int> shape, std::vector<double> p,
                             std::vector<DensityMatrix> states, const Tolerances& tol) {
    *this = unchecked(std::move(s), std::move(shape), std::move(p), std::move(states));
    double sum = 0;
    for (double x : p_) {
        if (!(x > 0)) throw Error("invalid_decomposition", "member probabilities must be positive");
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol.trace) throw Error("invalid_decomposition", "probabilities do not sum to 1");
    for (const auto& st : states_) {
        if (st.structure() != s_) throw Error("invalid_decomposition", "member structure differs from parent");
        auto v = validate_state(s_, st.matrix(), tol);
        if (!v.ok()) throw Error("invalid_decomposition", "member state invalid: " + v.message());
        if (purity(st) < 1.0 - 1e-9) throw Error("invalid_decomposition", "member state is not pure");
    }
}

Decomposition Decomposition::unchecked(ModeStructure s, std::vector<int> shape, std::vector<double> p,
                                       std::vector<DensityMatrix> states) {
    if (shape.size() != s.dims().size()) throw Error("invalid_decomposition", "shape needs one entry per mode");
    for (int x : shape)
        if (x < 1) throw Error("invalid_decomposition", "shape entries must be >= 1");
    if (product(shape) != p.size() || p.size() != states.size())
        throw Error("invalid_decomposition", "shape product, probability count and state count disagree");
    Decomposition d;
    d.s_ = std::move(s);
    d.shape_ = std::move(shape);
    d.p_ = std::move(p);
    d.states_ = std::move(states);
    return d;
}

DensityMatrix Decomposition::parent() const {
    Mat m = Mat::Zero(s_.n(), s_.n());
    for (std::size_t j = 0; j < p_.size(); ++j) m += p_[j] * states_[j].matrix();
    return DensityMatrix::unchecked(s_, m);
}

std::vector<ShapeSet> enumerate_shapes(const ModeStructure& s, int r, ShapeBound bound) {
    if (r < 1) throw Error("out_of_range", "rank must be >= 1");
    const std::size_t top = bound == ShapeBound::RankSquared ? static_cast<std::size_t>(r) * r : s.n() * s.n();
    std::vector<std::vector<std::vector<int>>> by_D(top + 1);
    std::vector<int> cur(s.N());
    std::function<void(int, std::size_t)> rec = [&](int m, std::size_t prod) {
        if (m == s.N()) {
            if (prod >= static_cast<std::size_t>(r)) by_D[prod].push_back(cur);
            return;
        }
        const std::size_t cap = static_cast<std::size_t>(s.dims()[m]) * s.dims()[m];
        for (std::size_t d = 1; d <= cap && prod * d <= top; ++d) {
            cur[m] = static_cast<int>(d);
            rec(m + 1, prod * d);
        }
    };
    rec(0, 1);
    std::vector<ShapeSet> out;
    for (std::size_t D = r; D <= top; ++D)
        if (!by_D[D].empty()) out.push_back({static_cast<int>(D), by_D[D]});
    return out;
}

Mat fourier_unitary(int D) {
    Mat U(D, D);
    for (int j = 0; j < D; ++j)
        for (int k = 0; k < D; ++k) U(j, k) = std::polar(1.0 / std::sqrt(D), 2.0 * M_PI * j * k / D);
    return U;
}

Mat permutation_unitary(const std::vector<int>& perm) {
    const int D = static_cast<int>(perm.size());
    Mat U = Mat::Zero(D, D);
    for (int j = 0; j < D; ++j) U(j, perm[j]) = 1;
    return U;
}

namespace {

std::vector<int> default_shape(const ModeStructure& s, int r) {
    for (const auto& set : enumerate_shapes(s, r))
        if (set.D == r) return set.shapes.front();
    std::vector<int> sh(s.N(), 1);
    sh.back() = r;
    return sh;
}

}  // namespace

Decomposition spectral_decomposition(const DensityMatrix& rho, const Tolerances& tol) {
    auto sp = hermitian_eig(rho, tol);
    const int r = std::max(sp.rank, 1);
    std::vector<double> p;
    std::vector<DensityMatrix> st;
    for (int k = 0; k < r; ++k) {
        p.push_back(sp.values[k]);
        st.push_back(pure_state(rho.structure(), sp.vectors.col(k)));
    }
    return Decomposition::unchecked(rho.structure(), default_shape(rho.structure(), r), p, st);
}

Decomposition unitary_decomposition(const DensityMatrix& rho, const Mat& U, const std::vector<int>& shape,
                                    const Tolerances& tol, ShapeBound bound) {
    if (U.rows() != U.cols()) throw Error("bad_unitary", "U must be square");
    const std::size_t D = static_cast<std::size_t>(U.rows());
    if (product(shape) != D) throw Error("bad_shape", "shape product does not match the size of U");
    if ((U.adjoint() * U - Mat::Identity(D, D)).cwiseAbs().maxCoeff() > 1e-10)
        throw Error("bad_unitary", "U is not unitary");
    auto sp = hermitian_eig(rho, tol);
    const std::size_t r = static_cast<std::size_t>(std::max(sp.rank, 1));
    const std::size_t top = bound == ShapeBound::RankSquared ? r * r : rho.n() * rho.n();
    if (D < r || D > top) throw Error("bad_shape", "decomposition size outside the allowed range");
    std::vector<double> p;
    std::vector<DensityMatrix> st;
    for (std::size_t j = 0; j < D; ++j) {
        Vec psi = Vec::Zero(rho.n());
        for (std::size_t k = 0; k < r; ++k) psi += U(j, k) * std::sqrt(std::max(0.0, sp.values[k])) * sp.vectors.col(k);
        const double pj = psi.squaredNorm();
        if (pj <= 1e-300) throw Error("zero_row", "row " + std::to_string(j + 1) + " of U vanishes on the support");
        p.push_back(pj);
        st.push_back(pure_state(rho.structure(), psi));
    }
    return Decomposition::unchecked(rho.structure(), shape, p, st);
}

std::vector<Mat> mu_states(const Decomposition& d) {
    const auto& s = d.structure();
    const ModeStructure shp(d.shape());
    const std::size_t D = d.size();
    // A[m][v]: mode-m reduction of the unweighted sum over members with j_m = v
    std::vector<std::vector<Mat>> A(s.N());
    for (int m = 0; m < s.N(); ++m) A[m].assign(d.shape()[m], Mat::Zero(s.dims()[m], s.dims()[m]));
    for (std::size_t j = 1; j <= D; ++j) {
        auto jv = inverse_register(j, shp);
        for (int m = 0; m < s.N(); ++m)
            A[m][jv[m] - 1] += partial_trace(d.states()[j - 1].matrix(), s, {m + 1});
    }
    for (int m = 0; m < s.N(); ++m)
        for (auto& a : A[m]) a /= static_cast<double>(D / d.shape()[m]);
    std::vector<Mat> mu;
    for (std::size_t j = 1; j <= D; ++j) {
        auto jv = inverse_register(j, shp);
        Mat acc = A[0][jv[0] - 1];
        for (int m = 1; m < s.N(); ++m) acc = kron(acc, A[m][jv[m] - 1]);
        mu.push_back(std::move(acc));
    }
    return mu;
}

double unoptimized_statance(const Decomposition& d) {
    auto mu = mu_states(d);
    double s = 0;
    for (std::size_t j = 0; j < d.size(); ++j) s += (d.states()[j].matrix() - mu[j]).squaredNorm();
    return s;
}

std::vector<double> q_products(const std::vector<double>& p, const std::vector<int>& shape) {
    const ModeStructure shp(shape);
    if (p.size() != shp.n()) throw Error("bad_shape", "probability count does not match shape");
    std::vector<std::vector<double>> marg(shape.size());
    for (std::size_t m = 0; m < shape.size(); ++m) marg[m].assign(shape[m], 0.0);
    for (std::size_t j = 1; j <= p.size(); ++j) {
        auto jv = inverse_register(j, shp);
        for (std::size_t m = 0; m < shape.size(); ++m) marg[m][jv[m] - 1] += p[j - 1];
    }
    std::vector<double> q(p.size());
    for (std::size_t j = 1; j <= p.size(); ++j) {
        auto jv = inverse_register(j, shp);
        double x = 1;
        for (std::size_t m = 0; m < shape.size(); ++m) x *= marg[m][jv[m] - 1];
        q[j - 1] = x;
    }
    return q;
}

double unoptimized_probablance(const Decomposition& d) {
    auto q = q_products(d.probabilities(), d.shape());
    double s = 0;
    for (std::size_t j = 0; j < q.size(); ++j) s += (d.probabilities()[j] - q[j]) * (d.probabilities()[j] - q[j]);
    return s;
}

namespace {

// Diagonal support: members are computational basis states, so every mu_j is
// a product of per-mode distributions and the statance reduces to sums.
struct Support {
    ModeStructure s;
    std::vector<std::vector<int>> digits;  // 0-based level per mode, per support entry
    std::vector<double> weight;
};

Support diagonal_support(const DensityMatrix& rho, int r_max, const Tolerances& tol) {
    if (!is_diagonal(rho.matrix(), tol.diag)) throw Error("not_diagonal", "strictly classical search needs a diagonal state");
    Support sup{rho.structure(), {}, {}};
    for (std::size_t a = 0; a < rho.n(); ++a) {
        const double w = rho.matrix()(a, a).real();
        if (w > tol.rank) {
            auto v = inverse_register(a + 1, rho.structure());
            for (int& x : v) --x;
            sup.digits.push_back(v);
            sup.weight.push_back(w);
        }
    }
    const int r = static_cast<int>(sup.weight.size());
    if (r < 1) throw Error("invalid_state", "state has empty support");
    if (r > r_max) throw Error("rank_cap", "rank " + std::to_string(r) + " exceeds the exhaustive-search cap " + std::to_string(r_max));
    return sup;
}

double fast_statance(const Support& sup, const std::vector<int>& perm, const std::vector<int>& shape) {
    const int N = sup.s.N();
    const ModeStructure shp(shape);
    const std::size_t D = perm.size();
    std::vector<std::vector<int>> jv(D);
    for (std::size_t j = 0; j < D; ++j) {
        jv[j] = inverse_register(j + 1, shp);
        for (int& x : jv[j]) --x;
    }
    // f[m][v][level]
    std::vector<std::vector<std::vector<double>>> f(N);
    for (int m = 0; m < N; ++m) f[m].assign(shape[m], std::vector<double>(sup.s.dims()[m], 0.0));
    for (std::size_t j = 0; j < D; ++j)
        for (int m = 0; m < N; ++m) f[m][jv[j][m]][sup.digits[perm[j]][m]] += 1.0;
    for (int m = 0; m < N; ++m)
        for (auto& row : f[m])
            for (double& x : row) x /= static_cast<double>(D / shape[m]);
    double total = 0;
    for (std::size_t j = 0; j < D; ++j) {
        double at = 1, sq = 1;
        for (int m = 0; m < N; ++m) {
            const auto& row = f[m][jv[j][m]];
            at *= row[sup.digits[perm[j]][m]];
            double s2 = 0;
            for (double x : row) s2 += x * x;
            sq *= s2;
        }
        total += 1.0 - 2.0 * at + sq;
    }
    return total;
}

double fast_probablance(const Support& sup, const std::vector<int>& perm, const std::vector<int>& shape) {
    std::vector<double> p(perm.size());
    for (std::size_t j = 0; j < perm.size(); ++j) p[j] = sup.weight[perm[j]];
    auto q = q_products(p, shape);
    double s = 0;
    for (std::size_t j = 0; j < p.size(); ++j) s += (p[j] - q[j]) * (p[j] - q[j]);
    return s;
}

template <class F>
void for_each_candidate(const Support& sup, F&& f) {
    const int r = static_cast<int>(sup.weight.size());
    std::vector<std::vector<int>> shapes;
    for (const auto& set : enumerate_shapes(sup.s, r))
        if (set.D == r) shapes = set.shapes;
    if (shapes.empty()) throw Error("bad_shape", "no admissible shape with D = rank");
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (const auto& sh : shapes) f(perm, sh);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

ClassicalResult classical_statance(const DensityMatrix& rho, int r_max, const Tolerances& tol) {
    auto sup = diagonal_support(rho, r_max, tol);
    ClassicalResult best;
    bool have = false;
    for_each_candidate(sup, [&](const std::vector<int>& perm, const std::vector<int>& sh) {
        const double v = fast_statance(sup, perm, sh);
        if (!have || v < best.value - kTie) {
            best = {v, perm, sh};
            have = true;
        }
    });
    return best;
}

ClassicalResult classical_probablance(const DensityMatrix& rho, int r_max, const Tolerances& tol) {
    auto sup = diagonal_support(rho, r_max, tol);
    const double smin = classical_statance(rho, r_max, tol).value;
    ClassicalResult best;
    bool have = false;
    for_each_candidate(sup, [&](const std::vector<int>& perm, const std::vector<int>& sh) {
        if (fast_statance(sup, perm, sh) > smin + kTie) return;
        const double v = fast_probablance(sup, perm, sh);
        if (!have || v < best.value - kTie) {
            best = {v, perm, sh};
            have = true;
        }
    });
    return best;
}

}  // namespace corrkit
