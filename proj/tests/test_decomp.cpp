#include "corrkit/decomp.hpp"
#include "corrkit/randgen.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/QR>
#include <numeric>

using namespace corrkit;

namespace {

const ModeStructure kQQ{2, 2};

DensityMatrix basis(const ModeStructure& s, std::size_t i) { return DensityMatrix(s, oracle::basis_projector(s.n(), i)); }

Mat random_unitary(int D, Rng& rng) {
    Mat g(D, D);
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ();
}

// brute force over permutations of the support, every shape with D = r,
// evaluated through the general matrix path
struct Brute {
    double statance = 0, probablance = 0;
};

Brute brute_force(const DensityMatrix& rho) {
    std::vector<std::size_t> sup;
    std::vector<double> w;
    for (std::size_t a = 0; a < rho.n(); ++a)
        if (rho.matrix()(a, a).real() > 1e-10) {
            sup.push_back(a);
            w.push_back(rho.matrix()(a, a).real());
        }
    const int r = static_cast<int>(sup.size());
    std::vector<std::vector<int>> shapes;
    for (int d1 = 1; d1 <= 4; ++d1)
        for (int d2 = 1; d2 <= 4; ++d2)
            if (d1 * d2 == r) shapes.push_back({d1, d2});
    std::vector<std::pair<double, double>> all;
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<double> p;
        std::vector<DensityMatrix> st;
        for (int j = 0; j < r; ++j) {
            p.push_back(w[perm[j]]);
            st.push_back(basis(rho.structure(), sup[perm[j]]));
        }
        for (const auto& sh : shapes) {
            Decomposition d(rho.structure(), sh, p, st);
            all.push_back({unoptimized_statance(d), unoptimized_probablance(d)});
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    Brute b;
    b.statance = all.front().first;
    for (auto& [s, p] : all) b.statance = std::min(b.statance, s);
    b.probablance = 1e300;
    for (auto& [s, p] : all)
        if (s <= b.statance + 1e-12) b.probablance = std::min(b.probablance, p);
    return b;
}

}  // namespace

TEST_CASE("admissible shapes") {
    auto one = enumerate_shapes(kQQ, 1);
    REQUIRE(one.size() == 1u);
    CHECK(one[0].D == 1);
    CHECK(one[0].shapes == std::vector<std::vector<int>>{{1, 1}});

    auto two = enumerate_shapes(kQQ, 2);
    std::vector<int> Ds;
    std::vector<std::vector<int>> flat;
    for (auto& s : two) {
        Ds.push_back(s.D);
        for (auto& v : s.shapes) flat.push_back(v);
    }
    CHECK(Ds == std::vector<int>{2, 3, 4});
    std::sort(flat.begin(), flat.end());
    CHECK(flat == std::vector<std::vector<int>>{{1, 2}, {1, 3}, {1, 4}, {2, 1}, {2, 2}, {3, 1}, {4, 1}});

    Ds.clear();
    flat.clear();
    for (auto& s : enumerate_shapes(kQQ, 3)) {
        Ds.push_back(s.D);
        for (auto& v : s.shapes) flat.push_back(v);
    }
    CHECK(Ds == std::vector<int>{3, 4, 6, 8, 9});
    std::sort(flat.begin(), flat.end());
    CHECK(flat == std::vector<std::vector<int>>{{1, 3}, {1, 4}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {4, 1}, {4, 2}});

    // the looser bound reaches n^2 = 16
    CHECK(enumerate_shapes(kQQ, 2, ShapeBound::DimSquared).back().D == 16);
    CHECK_THROWS_AS(enumerate_shapes(kQQ, 0), Error);
}

TEST_CASE("decomposition validation") {
    CHECK_THROWS_AS(Decomposition(kQQ, {1, 2}, {0.5, 0.5}, {basis(kQQ, 0), maximally_mixed(kQQ)}), Error);
    CHECK_THROWS_AS(Decomposition(kQQ, {1, 2}, {0.6, 0.5}, {basis(kQQ, 0), basis(kQQ, 1)}), Error);
    CHECK_THROWS_AS(Decomposition(kQQ, {1, 3}, {0.5, 0.5}, {basis(kQQ, 0), basis(kQQ, 1)}), Error);
    CHECK_THROWS_AS(Decomposition(kQQ, {1, 2}, {1.0, 0.0}, {basis(kQQ, 0), basis(kQQ, 1)}), Error);
    Decomposition ok(kQQ, {1, 2}, {0.25, 0.75}, {basis(kQQ, 0), basis(kQQ, 3)});
    CHECK(std::abs(ok.parent().matrix()(3, 3).real() - 0.75) < 1e-15);
}

TEST_CASE("spectral and unitary decompositions") {
    auto pure = haar_pure(ModeStructure{2, 3}, 2);
    auto sd = spectral_decomposition(pure);
    CHECK(sd.size() == 1u);
    CHECK(sd.probabilities()[0] == doctest::Approx(1.0));

    auto d2 = spectral_decomposition(diagonal_state(ModeStructure{2}, {0.3, 0.7}));
    CHECK(d2.probabilities()[0] == doctest::Approx(0.7));
    CHECK(d2.probabilities()[1] == doctest::Approx(0.3));
    CHECK(std::abs(d2.states()[0].matrix()(1, 1).real() - 1) < 1e-12);

    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        auto rho = hs_mixed(kQQ, rng);
        auto sp = spectral_decomposition(rho);
        CHECK(sp.size() == 4u);
        CHECK((sp.parent().matrix() - rho.matrix()).norm() < 1e-10);
        for (int i = 0; i + 1 < 4; ++i) CHECK(sp.probabilities()[i] >= sp.probabilities()[i + 1]);

        for (int D : {4, 6, 8, 16}) {
            const std::vector<int> sh = D == 4 ? std::vector<int>{2, 2} : D == 6 ? std::vector<int>{2, 3} : D == 8 ? std::vector<int>{2, 4} : std::vector<int>{4, 4};
            auto d = unitary_decomposition(rho, random_unitary(D, rng), sh);
            CHECK((d.parent().matrix() - rho.matrix()).norm() < 1e-9);
            for (auto& st : d.states()) CHECK(oracle::hs2(st.matrix()) == doctest::Approx(1.0).epsilon(1e-9));
            double s = 0;
            for (double p : d.probabilities()) s += p;
            CHECK(s == doctest::Approx(1.0));
        }
        auto id = unitary_decomposition(rho, Mat::Identity(4, 4), {2, 2});
        for (int j = 0; j < 4; ++j) CHECK(id.probabilities()[j] == doctest::Approx(sp.probabilities()[j]));

        // Fourier mixing flattens the probabilities and hides probability correlation
        auto f = unitary_decomposition(rho, fourier_unitary(4), {2, 2});
        for (double p : f.probabilities()) CHECK(p == doctest::Approx(0.25));
        CHECK(unoptimized_probablance(f) < 1e-28);
    }
    auto rho3 = diagonal_state(ModeStructure{2, 3}, {0.5, 0.3, 0.2, 0, 0, 0});
    auto f3 = unitary_decomposition(rho3, fourier_unitary(3), {1, 3});
    for (double p : f3.probabilities()) CHECK(p == doctest::Approx(1.0 / 3));

    auto rho = hs_mixed(kQQ, 5);
    CHECK_THROWS_AS(unitary_decomposition(rho, Mat::Identity(4, 4), {2, 3}), Error);
    CHECK_THROWS_AS(unitary_decomposition(rho, Mat::Identity(3, 3), {1, 3}), Error);
    CHECK_THROWS_AS(unitary_decomposition(rho, 2.0 * Mat::Identity(4, 4), {2, 2}), Error);
    // a row that vanishes on the support
    auto low = diagonal_state(kQQ, {0.6, 0.4, 0, 0});
    CHECK_THROWS_AS(unitary_decomposition(low, permutation_unitary({2, 0, 1, 3}), {2, 2}), Error);
    CHECK_THROWS_AS(unitary_decomposition(low, Mat::Identity(5, 5), {1, 5}), Error);
}

TEST_CASE("mu states and statance by hand") {
    // members |11>, |12>, |21> with shape (1,3)
    Decomposition d(kQQ, {1, 3}, {0.5, 0.3, 0.2}, {basis(kQQ, 0), basis(kQQ, 1), basis(kQQ, 2)});
    auto mu = mu_states(d);
    Mat m1 = Mat::Zero(4, 4), m2 = Mat::Zero(4, 4);
    m1(0, 0) = 2.0 / 3;
    m1(2, 2) = 1.0 / 3;
    m2(1, 1) = 2.0 / 3;
    m2(3, 3) = 1.0 / 3;
    CHECK((mu[0] - m1).norm() < 1e-15);
    CHECK((mu[1] - m2).norm() < 1e-15);
    CHECK((mu[2] - m1).norm() < 1e-15);
    CHECK(unoptimized_statance(d) == doctest::Approx(4.0 / 3));

    // every ordering and both shapes give the same value
    std::vector<int> perm{0, 1, 2};
    do {
        for (const std::vector<int>& sh : {std::vector<int>{1, 3}, std::vector<int>{3, 1}}) {
            std::vector<double> p;
            std::vector<DensityMatrix> st;
            for (int j : perm) {
                p.push_back(d.probabilities()[j]);
                st.push_back(d.states()[j]);
            }
            CHECK(unoptimized_statance(Decomposition(kQQ, sh, p, st)) == doctest::Approx(4.0 / 3));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // mode-independent members: mu_j = rho_j
    Rng rng(4);
    auto a1 = haar_pure(ModeStructure{2}, rng), a2 = haar_pure(ModeStructure{2}, rng);
    auto b1 = haar_pure(ModeStructure{3}, rng), b2 = haar_pure(ModeStructure{3}, rng);
    Decomposition mi(ModeStructure{2, 3}, {2, 2}, {0.4, 0.1, 0.2, 0.3}, {kron(a1, b1), kron(a1, b2), kron(a2, b1), kron(a2, b2)});
    auto mmi = mu_states(mi);
    for (int j = 0; j < 4; ++j) CHECK((mmi[j] - mi.states()[j].matrix()).norm() < 1e-12);
    CHECK(unoptimized_statance(mi) < 1e-24);
    CHECK(unoptimized_probablance(mi) > 0.01);

    // single member: mu is the product of its reductions
    auto psi = haar_pure(kQQ, rng);
    Decomposition one(kQQ, {1, 1}, {1.0}, {psi});
    const Mat want = oracle::reduction_product(psi.matrix(), {2, 2});
    CHECK((mu_states(one)[0] - want).norm() < 1e-12);
    CHECK(unoptimized_statance(Decomposition(kQQ, {1, 1}, {1.0}, {kron(a1, a2)})) < 1e-24);
}

TEST_CASE("probability products") {
    auto q = q_products({0.5, 0.3, 0.2, 0.0}, {2, 2});
    // marginals (0.8, 0.2) and (0.7, 0.3)
    CHECK(q[0] == doctest::Approx(0.56));
    CHECK(q[1] == doctest::Approx(0.24));
    CHECK(q[2] == doctest::Approx(0.14));
    CHECK(q[3] == doctest::Approx(0.06));
    for (const std::vector<int>& sh : {std::vector<int>{2, 3}, std::vector<int>{3, 2}, std::vector<int>{1, 6}}) {
        auto u = q_products(std::vector<double>(6, 1.0 / 6), sh);
        for (double x : u) CHECK(x == doctest::Approx(1.0 / 6));
    }
    // products of marginals reproduce themselves
    std::vector<double> a{0.2, 0.8}, b{0.1, 0.6, 0.3}, p;
    for (double x : a)
        for (double y : b) p.push_back(x * y);
    auto qp = q_products(p, {2, 3});
    for (std::size_t j = 0; j < p.size(); ++j) CHECK(qp[j] == doctest::Approx(p[j]));
    CHECK_THROWS_AS(q_products({0.5, 0.5}, {2, 2}), Error);

    auto corr = q_products({0.5, 0, 0, 0.5}, {2, 2});
    double pb = 0;
    const double pv[4] = {0.5, 0, 0, 0.5};
    for (int j = 0; j < 4; ++j) pb += (pv[j] - corr[j]) * (pv[j] - corr[j]);
    CHECK(pb == doctest::Approx(0.25));
}

TEST_CASE("classical statance and probablance") {
    // support |11>, |12>, |21>: no ordering makes it mode independent
    auto r3 = diagonal_state(kQQ, {0.5, 0.3, 0.2, 0});
    auto cs = classical_statance(r3);
    CHECK(cs.value == doctest::Approx(4.0 / 3));
    CHECK(classical_probablance(r3).value < 1e-24);

    CHECK(classical_statance(diagonal_state(kQQ, {0.7, 0.3, 0, 0})).value < 1e-24);
    CHECK(classical_statance(diagonal_state(kQQ, {0.7, 0, 0, 0.3})).value > 0.1);
    CHECK(classical_statance(diagonal_state(kQQ, {0.1, 0.2, 0.3, 0.4})).value < 1e-24);
    CHECK(classical_statance(basis(kQQ, 2)).value == 0.0);
    CHECK(classical_probablance(basis(kQQ, 2)).value == 0.0);

    auto full = diagonal_state(kQQ, {0.4, 0.1, 0.1, 0.4});
    CHECK(classical_statance(full).value < 1e-24);
    auto fp = classical_probablance(full);
    CHECK(fp.value == doctest::Approx(0.09));
    CHECK(fp.shape == std::vector<int>{2, 2});
    CHECK(fp.value == doctest::Approx(brute_force(full).probablance));

    // against the general path on random supports of rank 1..4
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> w(4, 0.0);
        const int r = 1 + static_cast<int>(rng.below(4));
        std::vector<int> idx{0, 1, 2, 3};
        for (int i = 3; i > 0; --i) std::swap(idx[i], idx[rng.below(i + 1)]);
        double tot = 0;
        for (int i = 0; i < r; ++i) tot += (w[idx[i]] = 0.05 + rng.uniform());
        for (double& x : w) x /= tot;
        auto rho = diagonal_state(kQQ, w);
        auto b = brute_force(rho);
        auto s = classical_statance(rho), p = classical_probablance(rho);
        CHECK(std::abs(s.value - b.statance) < 1e-12);
        CHECK(std::abs(p.value - b.probablance) < 1e-12);
        if (r <= 3) CHECK(p.value < 1e-24);
        if (r == 4) CHECK(s.value < 1e-24);
        // the reported permutation reproduces the value
        CHECK(s.permutation.size() == std::size_t(r));
    }

    CHECK_THROWS_AS(classical_statance(hs_mixed(kQQ, 3)), Error);
    try {
        classical_statance(random_diagonal(ModeStructure{3, 3}, 2), 8);
        FAIL("expected the rank cap");
    } catch (const Error& e) {
        CHECK(e.code() == "rank_cap");
    }
}

TEST_CASE("family five admits zero statance") {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        auto d = family_decomposition(5, t % 2 ? kQQ : ModeStructure{2, 3}, rng);
        CHECK(unoptimized_statance(d) < 1e-20);
        CHECK((d.parent().matrix() - d.parent().matrix().adjoint()).norm() < 1e-12);
    }
}
