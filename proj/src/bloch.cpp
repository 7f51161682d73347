#include "corrkit/bloch.hpp"

#include <cmath>

namespace corrkit {

std::vector<Mat> gm_basis(int nm) {
    if (nm < 1) throw Error("out_of_range", "mode size must be >= 1");
    std::vector<Mat> out(static_cast<std::size_t>(nm) * nm, Mat::Zero(nm, nm));
    out[0] = Mat::Identity(nm, nm);
    const cplx I(0, 1);
    // 1-based alpha > beta, E(a,b) = |a><b|
    for (int a = 2; a <= nm; ++a) {
        for (int b = 1; b < a; ++b) {
            Mat& s = out[a * a - 2 * (a - b) - 1];
            s(a - 1, b - 1) = 1;
            s(b - 1, a - 1) = 1;
            Mat& t = out[a * a - 2 * (a - b)];
            t(a - 1, b - 1) = I;
            t(b - 1, a - 1) = -I;
        }
        Mat& d = out[a * a - 1];
        const double f = std::sqrt(2.0 / (a * (a - 1.0)));
        for (int q = 1; q < a; ++q) d(q - 1, q - 1) = f;
        d(a - 1, a - 1) = -f * (a - 1);
    }
    return out;
}

std::vector<Mat> usb_operators(int nm) {
    auto v = gm_basis(nm);
    const double f = std::sqrt(nm / 2.0);
    for (std::size_t k = 1; k < v.size(); ++k) v[k] *= f;
    return v;
}

OperatorBasis::OperatorBasis(ModeStructure s) : s_(std::move(s)) {
    for (int d : s_.dims()) ops_.push_back(usb_operators(d));
}

namespace {

struct Entry {
    int r, c;
    cplx v;
};
using Sparse = std::vector<Entry>;

std::vector<std::vector<Sparse>> sparse_ops(const ModeStructure& s) {
    std::vector<std::vector<Sparse>> out;
    for (int d : s.dims()) {
        std::vector<Sparse> mode;
        for (const Mat& m : usb_operators(d)) {
            Sparse sp;
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    if (m(i, j) != cplx(0)) sp.push_back({i, j, m(i, j)});
            mode.push_back(std::move(sp));
        }
        out.push_back(std::move(mode));
    }
    return out;
}

// calls f(row, col, value) for every nonzero of nu_k1 x ... x nu_kN
template <class F>
void for_each_entry(const std::vector<std::vector<Sparse>>& ops, const ModeStructure& s, const std::vector<int>& k, F&& f) {
    const int N = s.N();
    std::vector<std::size_t> pos(N, 0);
    for (int m = 0; m < N; ++m)
        if (ops[m][k[m]].empty()) return;
    while (true) {
        std::size_t r = 0, c = 0;
        cplx v = 1;
        for (int m = 0; m < N; ++m) {
            const Entry& e = ops[m][k[m]][pos[m]];
            r = r * s.dims()[m] + e.r;
            c = c * s.dims()[m] + e.c;
            v *= e.v;
        }
        f(r, c, v);
        int m = N - 1;
        while (m >= 0 && ++pos[m] == ops[m][k[m]].size()) pos[m--] = 0;
        if (m < 0) break;
    }
}

bool next_index(std::vector<int>& k, const ModeStructure& s) {
    for (int m = s.N() - 1; m >= 0; --m) {
        if (++k[m] < s.dims()[m] * s.dims()[m]) return true;
        k[m] = 0;
    }
    return false;
}

}  // namespace

std::vector<std::vector<int>> OperatorBasis::indices() const {
    std::vector<std::vector<int>> out;
    std::vector<int> k(s_.N(), 0);
    while (next_index(k, s_)) out.push_back(k);
    return out;
}

Mat OperatorBasis::element(const std::vector<int>& k) const {
    if (static_cast<int>(k.size()) != s_.N()) throw Error("out_of_range", "index length does not match mode count");
    Mat acc = Mat::Ones(1, 1);
    for (int m = 0; m < s_.N(); ++m) acc = kron(acc, ops_[m].at(k[m]));
    return acc / std::sqrt(static_cast<double>(s_.n()));
}

double BlochVector::get(const Key& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? 0.0 : it->second;
}

void BlochVector::set(const Key& k, double v) {
    if (v == 0.0)
        c_.erase(k);
    else
        c_[k] = v;
}

double BlochVector::norm2() const {
    double s = 0;
    for (const auto& [k, v] : c_) s += v * v;
    return s;
}

double BlochVector::dot(const BlochVector& o) const {
    double s = 0;
    for (const auto& [k, v] : c_) s += v * o.get(k);
    return s;
}

BlochVector BlochVector::operator-(const BlochVector& o) const {
    BlochVector r = *this;
    for (const auto& [k, v] : o.c_) r.set(k, r.get(k) - v);
    return r;
}

BlochVector BlochVector::operator+(const BlochVector& o) const {
    BlochVector r = *this;
    for (const auto& [k, v] : o.c_) r.set(k, r.get(k) + v);
    return r;
}

BlochVector bloch_of(const DensityMatrix& rho) {
    const auto& s = rho.structure();
    if (s.n() < 2) throw Error("unsupported_structure", "Bloch vectors need n >= 2");
    auto ops = sparse_ops(s);
    const Mat& m = rho.matrix();
    const double f = 1.0 / std::sqrt(s.n() - 1.0);
    BlochVector g(s);
    std::vector<int> k(s.N(), 0);
    while (next_index(k, s)) {
        cplx tr = 0;
        for_each_entry(ops, s, k, [&](std::size_t r, std::size_t c, cplx v) { tr += v * m(c, r); });
        g.set(k, tr.real() * f);
    }
    return g;
}

Mat matrix_of(const BlochVector& g) {
    const auto& s = g.structure();
    auto ops = sparse_ops(s);
    const double f = std::sqrt(s.n() - 1.0);
    Mat m = Mat::Identity(s.n(), s.n());
    for (const auto& [k, val] : g.components())
        for_each_entry(ops, s, k, [&](std::size_t r, std::size_t c, cplx v) { m(r, c) += f * val * v; });
    return m / static_cast<double>(s.n());
}

DensityMatrix state_of(const BlochVector& g, const Tolerances& tol) {
    return DensityMatrix(g.structure(), matrix_of(g), tol);
}

BlochVector reduced_bloch(const BlochVector& g, const std::vector<int>& modes) {
    const auto& s = g.structure();
    std::vector<int> d;
    std::vector<bool> in(s.N() + 1, false);
    int prev = 0;
    for (int l : modes) {
        if (l <= prev || l > s.N()) throw Error("out_of_range", "mode list must be ascending labels within range");
        prev = l;
        in[l] = true;
        d.push_back(s.dims()[l - 1]);
    }
    ModeStructure rs(d);
    BlochVector out(rs);
    if (rs.n() < 2) return out;
    const double f = std::sqrt((s.n() - 1.0) / (rs.n() - 1.0));
    for (const auto& [k, v] : g.components()) {
        bool inside = true;
        BlochVector::Key rk;
        for (int m = 1; m <= s.N(); ++m) {
            if (in[m])
                rk.push_back(k[m - 1]);
            else if (k[m - 1] != 0)
                inside = false;
        }
        if (inside) out.set(rk, f * v);
    }
    return out;
}

BlochVector reduced_bloch(const BlochVector& g, int mode) { return reduced_bloch(g, std::vector<int>{mode}); }

BlochVector correlation_vector(const BlochVector& g, const std::vector<int>& modes) {
    const auto& s = g.structure();
    std::vector<bool> in(s.N() + 1, false);
    for (int l : modes) {
        if (l < 1 || l > s.N() || in[l]) throw Error("out_of_range", "invalid mode subset");
        in[l] = true;
    }
    if (modes.empty()) throw Error("out_of_range", "mode subset is empty");
    BlochVector out(s);
    for (const auto& [k, v] : g.components()) {
        bool match = true;
        for (int m = 1; m <= s.N() && match; ++m) match = ((k[m - 1] != 0) == in[m]);
        if (match) out.set(k, v);
    }
    return out;
}

BlochVector liaison_vector(const BlochVector& g) {
    if (g.structure().N() < 2) throw Error("unsupported_structure", "liaison vector needs N >= 2");
    BlochVector out = g;
    for (int m = 1; m <= g.structure().N(); ++m) out = out - correlation_vector(g, {m});
    return out;
}

}  // namespace corrkit
