#include "corrkit/randgen.hpp"

#include <cmath>

namespace corrkit {

Vec haar_vector(std::size_t n, Rng& rng) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double re = rng.normal(), im = rng.normal();
        v[i] = cplx(re, im);
    }
    return v / v.norm();
}

DensityMatrix haar_pure(const ModeStructure& s, Rng& rng) { return pure_state(s, haar_vector(s.n(), rng)); }

DensityMatrix hs_mixed(const ModeStructure& s, Rng& rng) {
    const std::size_t n = s.n();
    Mat G(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = rng.normal(), im = rng.normal();
            G(i, j) = cplx(re, im);
        }
    Mat W = G * G.adjoint();
    W = 0.5 * (W + W.adjoint());
    return DensityMatrix::unchecked(s, W / W.trace().real());
}

std::vector<double> flat_dirichlet(std::size_t k, Rng& rng) {
    std::vector<double> p(k);
    double s = 0;
    for (auto& x : p) s += (x = rng.exponential());
    for (auto& x : p) x /= s;
    return p;
}

DensityMatrix random_diagonal(const ModeStructure& s, Rng& rng) {
    auto p = flat_dirichlet(s.n(), rng);
    Mat m = Mat::Zero(s.n(), s.n());
    for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
    return DensityMatrix::unchecked(s, m);
}

DensityMatrix haar_pure(const ModeStructure& s, std::uint64_t seed) {
    Rng r(seed);
    return haar_pure(s, r);
}
DensityMatrix hs_mixed(const ModeStructure& s, std::uint64_t seed) {
    Rng r(seed);
    return hs_mixed(s, r);
}
DensityMatrix random_diagonal(const ModeStructure& s, std::uint64_t seed) {
    Rng r(seed);
    return random_diagonal(s, r);
}

namespace {

int draw_size(int cap, bool random, Rng& rng) { return random ? 1 + static_cast<int>(rng.below(cap)) : cap; }

Mat product_pure(const ModeStructure& s, Rng& rng) {
    Mat acc = Mat::Ones(1, 1);
    for (int d : s.dims()) {
        Vec v = haar_vector(d, rng);
        acc = kron(acc, v * v.adjoint());
    }
    return acc;
}

std::vector<double> mi_probabilities(const std::vector<int>& shape, Rng& rng) {
    std::vector<std::vector<double>> per;
    for (int d : shape) per.push_back(flat_dirichlet(d, rng));
    const ModeStructure shp(shape);
    std::vector<double> p(shp.n());
    for (std::size_t j = 1; j <= shp.n(); ++j) {
        auto jv = inverse_register(j, shp);
        double x = 1;
        for (std::size_t m = 0; m < shape.size(); ++m) x *= per[m][jv[m] - 1];
        p[j - 1] = x;
    }
    return p;
}

}  // namespace

Decomposition family_decomposition(int family, const ModeStructure& s, Rng& rng, const FamilyConfig& cfg) {
    if (family < 1 || family > 6) throw Error("bad_family", "family must be within 1..6");
    std::vector<int> shape(s.N(), 1);
    if (family == 1 || family == 3) {
        const int cap = cfg.D > 0 ? cfg.D : static_cast<int>(s.n() * s.n());
        shape.back() = draw_size(cap, cfg.random_size, rng);
    } else {
        for (int m = 0; m < s.N(); ++m) {
            int cap = s.dims()[m] * s.dims()[m];
            if (m < static_cast<int>(cfg.mode_sizes.size()) && cfg.mode_sizes[m] > 0) cap = cfg.mode_sizes[m];
            shape[m] = draw_size(cap, cfg.random_size, rng);
        }
    }
    const ModeStructure shp(shape);
    const std::size_t D = shp.n();

    const bool mi_probs = family == 2 || family == 4 || family == 6;
    std::vector<double> p = mi_probs ? mi_probabilities(shape, rng) : flat_dirichlet(D, rng);

    std::vector<DensityMatrix> states;
    if (family == 5 || family == 6) {
        // one pure state per (mode, index value)
        std::vector<std::vector<Mat>> local(s.N());
        for (int m = 0; m < s.N(); ++m)
            for (int v = 0; v < shape[m]; ++v) {
                Vec u = haar_vector(s.dims()[m], rng);
                local[m].push_back(u * u.adjoint());
            }
        for (std::size_t j = 1; j <= D; ++j) {
            auto jv = inverse_register(j, shp);
            Mat acc = Mat::Ones(1, 1);
            for (int m = 0; m < s.N(); ++m) acc = kron(acc, local[m][jv[m] - 1]);
            states.push_back(DensityMatrix::unchecked(s, acc));
        }
    } else {
        for (std::size_t j = 0; j < D; ++j) {
            if (family == 3 || family == 4)
                states.push_back(DensityMatrix::unchecked(s, product_pure(s, rng)));
            else
                states.push_back(haar_pure(s, rng));
        }
    }
    return Decomposition::unchecked(s, shape, p, std::move(states));
}

DensityMatrix family_state(int family, const ModeStructure& s, Rng& rng, const FamilyConfig& cfg) {
    return family_decomposition(family, s, rng, cfg).parent();
}

DensityMatrix family_state(int family, const ModeStructure& s, std::uint64_t seed, const FamilyConfig& cfg) {
    Rng r(seed);
    return family_state(family, s, r, cfg);
}

namespace {

Vec basis_vec(std::size_t n, std::size_t i) {
    Vec v = Vec::Zero(n);
    v[i] = 1;
    return v;
}

}  // namespace

DensityMatrix werner(double a) {
    if (a < 0 || a > 1) throw Error("out_of_range", "Werner parameter must be within [0,1]");
    const ModeStructure s{2, 2};
    // |12> - |21> in 1-based labels
    Vec psi = (basis_vec(4, 1) - basis_vec(4, 2)) / std::sqrt(2.0);
    Mat m = a * psi * psi.adjoint() + (1 - a) * Mat::Identity(4, 4) / 4.0;
    return DensityMatrix::unchecked(s, m);
}

DensityMatrix mixture40(double a) {
    if (a < 0 || a > 1) throw Error("out_of_range", "mixture parameter must be within [0,1]");
    const ModeStructure s{2, 2};
    Vec plus = (basis_vec(4, 1) + basis_vec(4, 2)) / std::sqrt(2.0);
    Mat m = Mat::Zero(4, 4);
    m(0, 0) = 1 - a;
    m(3, 3) = a;
    m += 2.0 * plus * plus.adjoint();
    return DensityMatrix::unchecked(s, m / 3.0);
}

DensityMatrix bell_phi_plus() {
    Vec psi = basis_vec(4, 0) + basis_vec(4, 3);
    return pure_state(ModeStructure{2, 2}, psi);
}

DensityMatrix ghz(const ModeStructure& s) {
    if (s.N() < 2) throw Error("unsupported_structure", "GHZ needs N >= 2");
    Vec psi = basis_vec(s.n(), 0) + basis_vec(s.n(), s.n() - 1);
    return pure_state(s, psi);
}

DensityMatrix ghz(int N) {
    if (N < 2) throw Error("unsupported_structure", "GHZ needs N >= 2");
    return ghz(ModeStructure(std::vector<int>(N, 2)));
}

DensityMatrix bell_product() { return kron(bell_phi_plus(), bell_phi_plus()); }

}  // namespace corrkit
