#include "corrkit/classical.hpp"
#include "corrkit/measures.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace corrkit;

namespace {

DataSet make(std::initializer_list<std::vector<double>> rows) {
    DataSet d;
    const auto cols = rows.begin()->size();
    d.X.resize(rows.size(), cols);
    int i = 0;
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < cols; ++c) d.X(i, c) = r[c];
        ++i;
    }
    return d;
}

// textbook two-pass sample correlation
double pearson_ref(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double n = x.size(), mx = x.sum() / n, my = y.sum() / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("quantization plan") {
    DataSet d = make({{0.2, -1}, {0.9, 1}});
    d.bounds = {{0, 1}};
    auto plan = make_plan(d, {4, 2});
    CHECK(plan.edges[0] == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(plan.reps[0] == std::vector<double>{0.125, 0.375, 0.625, 0.875});
    // second column has no declared bounds: data extremes
    CHECK(plan.edges[1] == std::vector<double>{-1, 0, 1});
    CHECK(plan.reps[1] == std::vector<double>{-0.5, 0.5});

    auto ext = make_plan(d, {1, 2}, BoundsMode::DataExtremes);
    CHECK(ext.edges[0] == std::vector<double>{0.2, 0.9});
    CHECK(ext.reps[0][0] == doctest::Approx(0.55));

    DataSet flat = make({{1, 0}, {1, 1}});
    CHECK_THROWS_AS(make_plan(flat, {2, 2}), Error);
    CHECK_NOTHROW(make_plan(flat, {1, 2}));
    CHECK_THROWS_AS(make_plan(d, {0, 2}), Error);
    CHECK_THROWS_AS(make_plan(d, {2}), Error);
}

TEST_CASE("bin assignment") {
    const std::vector<double> e{0, 0.25, 0.5, 0.75, 1};
    CHECK(bin_of(0.0, e) == 1);
    CHECK(bin_of(0.1, e) == 1);
    CHECK(bin_of(0.25, e) == 2);  // left-closed
    CHECK(bin_of(0.5, e) == 3);
    CHECK(bin_of(0.7499, e) == 3);
    CHECK(bin_of(1.0, e) == 4);   // last bin closed
    CHECK(bin_of(-3.0, e) == 1);  // clamped
    CHECK(bin_of(7.0, e) == 4);

    DataSet d = make({{-0.5}, {0.25}, {2.0}});
    d.bounds = {{0, 1}};
    auto plan = make_plan(d, {4});
    auto q = quantize(d, plan);
    CHECK(q(0, 0) == 0.125);
    CHECK(q(1, 0) == 0.375);
    CHECK(q(2, 0) == 0.875);
    auto bi = bin_indices(d, plan);
    CHECK(bi[0] == std::vector<int>{1});
    CHECK(bi[2] == std::vector<int>{4});
}

TEST_CASE("histogram density") {
    DataSet same = make({{0.3, 0.3}, {0.3, 0.3}, {0.3, 0.3}});
    same.bounds = {{0, 1}, {0, 1}};
    auto r = build_density(same, make_plan(same, {2, 3}));
    CHECK(r.structure() == ModeStructure{2, 3});
    CHECK(r.matrix()(0, 0).real() == 1.0);
    CHECK(r.matrix().trace().real() == 1.0);

    DataSet corners = make({{0, 0}, {1, 1}, {0, 0}, {1, 1}});
    auto plan = make_plan(corners, {2, 2});
    auto c = build_density(corners, plan);
    Mat want = Mat::Zero(4, 4);
    want(0, 0) = want(3, 3) = 0.5;
    CHECK((c.matrix() - want).norm() == 0.0);
    CHECK(diag_correlance(c) == doctest::Approx(1.0));

    // row (x=bin 2, y=bin 1) lands at scalar index (2-1)*3 + 1
    DataSet one = make({{0.9, 0.1}});
    one.bounds = {{0, 1}, {0, 1}};
    auto o = build_density(one, make_plan(one, {2, 3}));
    CHECK(o.matrix()(3, 3).real() == 1.0);

    // row order and duplication do not matter
    auto d = scenario('b', 200, 0.05, 3);
    auto p = make_plan(d, {4, 4});
    auto base = build_density(d, p);
    DataSet rev = d, twice = d;
    rev.X = d.X.colwise().reverse();
    twice.X.resize(400, 2);
    twice.X << d.X, d.X;
    CHECK((build_density(rev, p).matrix() - base.matrix()).norm() < 1e-15);
    CHECK((build_density(twice, p).matrix() - base.matrix()).norm() < 1e-15);
    CHECK(validate_state(base.structure(), base.matrix()).ok());
    CHECK(is_diagonal(base.matrix(), 0.0));

    DataSet empty;
    empty.X.resize(0, 2);
    CHECK_THROWS_AS(build_density(empty, QuantizationPlan{{2, 2}, {{0, 0.5, 1}, {0, 0.5, 1}}, {{0.25, 0.75}, {0.25, 0.75}}}), Error);
}

TEST_CASE("pearson coefficient") {
    DataSet lin = make({{0, 3}, {1, 5}, {2, 7}, {5, 13}});
    CHECK(pearson(lin, 0, 1) == doctest::Approx(1.0));
    DataSet neg = make({{0, 0}, {1, -1}, {2, -2}});
    CHECK(pearson(neg, 0, 1) == doctest::Approx(-1.0));
    auto d = scenario('b', 200, 0.05, 11);
    CHECK(pearson(d, 0, 1) == doctest::Approx(pearson_ref(d.X.col(0), d.X.col(1))).epsilon(1e-12));
    CHECK(pearson(d, 0, 1) == doctest::Approx(pearson(d, 1, 0)));
    DataSet scaled = d;
    scaled.X.col(1) = 3.5 * d.X.col(1).array() + 2;
    CHECK(pearson(scaled, 0, 1) == doctest::Approx(pearson(d, 0, 1)).epsilon(1e-12));
    DataSet flat = make({{1, 0}, {1, 1}, {1, 2}});
    CHECK_THROWS_AS(pearson(flat, 0, 1), Error);
    CHECK_THROWS_AS(pearson(make({{1, 2}}), 0, 1), Error);
}

TEST_CASE("scenarios") {
    auto c = scenario('c', 50, 0.0, 1);
    CHECK(c.samples() == 50u);
    for (int i = 0; i < 50; ++i) CHECK(c.X(i, 0) == c.X(i, 1));
    auto a1 = scenario('a', 100, 0.05, 5), a2 = scenario('a', 100, 0.05, 5), a3 = scenario('a', 100, 0.05, 6);
    CHECK(a1.X == a2.X);
    CHECK(a1.X != a3.X);
    CHECK(std::abs(pearson(scenario('a', 2000, 0.05, 2), 0, 1)) < 0.1);
    CHECK_THROWS_AS(scenario('q', 10, 0, 1), Error);

    // two heavy corners for the rounded ramp
    auto d = scenario('d', 400, 0.05, 9);
    auto r = build_density(d, make_plan(d, {4, 4}, BoundsMode::DataExtremes));
    CHECK(r.matrix()(0, 0).real() + r.matrix()(15, 15).real() > 0.9);

    // independent columns: diagonal correlance shrinks with more samples
    double prev = 1e9;
    for (std::size_t n : {100u, 1000u, 10000u}) {
        double acc = 0;
        for (std::uint64_t s = 1; s <= 5; ++s) {
            auto x = scenario('a', n, 0.05, s);
            acc += diag_correlance(build_density(x, make_plan(x, {4, 4}, BoundsMode::DataExtremes)));
        }
        CHECK(acc < prev);
        prev = acc;
    }
}

TEST_CASE("csv input") {
    const std::string path = "corrkit_test_input.csv";
    {
        std::ofstream f(path);
        f << "x,\"y, scaled\"\n0.1,2\n\"0.5\",3.5\n\n1e-1,-4\n";
    }
    auto d = read_csv(path);
    CHECK(d.names == std::vector<std::string>{"x", "y, scaled"});
    CHECK(d.samples() == 3u);
    CHECK(d.X(1, 0) == 0.5);
    CHECK(d.X(2, 1) == -4);
    {
        std::ofstream f(path);
        f << "x,y\n1,2\n3\n";
    }
    CHECK_THROWS_AS(read_csv(path), Error);
    {
        std::ofstream f(path);
        f << "x,y\n1,abc\n";
    }
    CHECK_THROWS_AS(read_csv(path), Error);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_csv("does/not/exist.csv"), Error);
}
