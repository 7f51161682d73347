#include "corrkit/state.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace corrkit {

ModeStructure::ModeStructure(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw Error("bad_structure", "structure needs at least one mode");
    n_ = 1;
    for (int d : dims_) {
        if (d < 1) throw Error("bad_structure", "mode dimensions must be >= 1");
        n_ *= static_cast<std::size_t>(d);
    }
}

int ModeStructure::dim(int label) const {
    if (label < 1 || label > N())
        throw Error("out_of_range", "mode label " + std::to_string(label) + " outside 1.." + std::to_string(N()));
    return dims_[label - 1];
}

int ModeStructure::nmax() const { return *std::max_element(dims_.begin(), dims_.end()); }

std::string ModeStructure::str() const {
    std::string s;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (i) s += 'x';
        s += std::to_string(dims_[i]);
    }
    return s;
}

ModeStructure parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw Error("bad_dims", "cannot parse dims '" + text + "' (expected e.g. 2x3x4)");
        dims.push_back(std::stoi(tok));
    }
    if (dims.empty() || text.back() == 'x') throw Error("bad_dims", "cannot parse dims '" + text + "'");
    return ModeStructure(dims);
}

ModeStructure concat(const ModeStructure& a, const ModeStructure& b) {
    auto d = a.dims();
    d.insert(d.end(), b.dims().begin(), b.dims().end());
    return ModeStructure(d);
}

std::vector<ModeStructure> structures_up_to(std::size_t max_n, bool ordered) {
    std::vector<ModeStructure> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, std::size_t prod, int lo) -> void {
        if (cur.size() >= 2) out.emplace_back(cur);
        for (int f = lo; prod * f <= max_n; ++f) {
            cur.push_back(f);
            self(self, prod * f, ordered ? 2 : f);
            cur.pop_back();
        }
    };
    rec(rec, 1, 2);
    std::sort(out.begin(), out.end(), [](const ModeStructure& a, const ModeStructure& b) {
        return a.n() != b.n() ? a.n() < b.n() : a.dims() < b.dims();
    });
    return out;
}

std::string Validation::message() const {
    if (ok()) return "ok";
    std::ostringstream os;
    os.precision(3);
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        os << violations[i].kind << " violation " << violations[i].residual;
    }
    return os.str();
}

Validation validate_state(const ModeStructure& s, const Mat& m, const Tolerances& tol) {
    Validation v;
    if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != s.n()) {
        v.violations.push_back({"dims", std::abs(static_cast<double>(m.rows()) - static_cast<double>(s.n()))});
        return v;
    }
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.herm) v.violations.push_back({"hermiticity", herm});
    double tr = std::abs(m.trace() - cplx(1.0, 0.0));
    if (tr > tol.trace) v.violations.push_back({"trace", tr});
    if (herm <= tol.herm) {
        Mat h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues().minCoeff();
        if (lo < -tol.psd) v.violations.push_back({"psd", -lo});
    }
    return v;
}

DensityMatrix::DensityMatrix(ModeStructure s, Mat m, const Tolerances& tol) : s_(std::move(s)), m_(std::move(m)) {
    auto v = validate_state(s_, m_, tol);
    if (!v.ok()) throw Error("invalid_state", v.message());
}

DensityMatrix DensityMatrix::unchecked(ModeStructure s, Mat m) {
    DensityMatrix d;
    d.s_ = std::move(s);
    d.m_ = std::move(m);
    return d;
}

Mat kron(const Mat& a, const Mat& b) { return Eigen::kroneckerProduct(a, b).eval(); }

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::unchecked(concat(a.structure(), b.structure()), kron(a.matrix(), b.matrix()));
}

namespace {

std::vector<int> digits_of(std::size_t idx, const std::vector<int>& dims) {
    std::vector<int> d(dims.size());
    for (std::size_t m = dims.size(); m-- > 0;) {
        d[m] = static_cast<int>(idx % static_cast<std::size_t>(dims[m]));
        idx /= static_cast<std::size_t>(dims[m]);
    }
    return d;
}

void check_labels(const ModeStructure& s, const std::vector<int>& keep) {
    std::vector<bool> seen(s.N() + 1, false);
    for (int l : keep) {
        if (l < 1 || l > s.N())
            throw Error("out_of_range", "mode label " + std::to_string(l) + " outside 1.." + std::to_string(s.N()));
        if (seen[l]) throw Error("duplicate_label", "mode label " + std::to_string(l) + " repeated");
        seen[l] = true;
    }
    if (keep.empty()) throw Error("out_of_range", "keep list is empty");
}

}  // namespace

Mat partial_trace(const Mat& m, const ModeStructure& s, const std::vector<int>& keep) {
    check_labels(s, keep);
    const auto& dims = s.dims();
    std::vector<int> traced;
    for (int l = 1; l <= s.N(); ++l)
        if (std::find(keep.begin(), keep.end(), l) == keep.end()) traced.push_back(l);

    std::size_t nk = 1, nt = 1;
    for (int l : keep) nk *= dims[l - 1];
    for (int l : traced) nt *= dims[l - 1];

    // bucket full indices by their traced-mode index
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> buckets(nt);
    for (std::size_t r = 0; r < s.n(); ++r) {
        auto d = digits_of(r, dims);
        std::size_t ki = 0, ti = 0;
        for (int l : keep) ki = ki * dims[l - 1] + d[l - 1];
        for (int l : traced) ti = ti * dims[l - 1] + d[l - 1];
        buckets[ti].push_back({r, ki});
    }
    Mat out = Mat::Zero(nk, nk);
    for (const auto& b : buckets)
        for (const auto& [r, kr] : b)
            for (const auto& [c, kc] : b) out(kr, kc) += m(r, c);
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    std::vector<int> d;
    for (int l : keep) d.push_back(rho.structure().dim(l));
    return DensityMatrix::unchecked(ModeStructure(d), partial_trace(rho.matrix(), rho.structure(), keep));
}

DensityMatrix permute_modes(const DensityMatrix& rho, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != rho.N())
        throw Error("out_of_range", "permutation must list every mode once");
    return partial_trace(rho, order);
}

DensityMatrix reduction_product(const DensityMatrix& rho) {
    Mat acc = partial_trace(rho.matrix(), rho.structure(), {1});
    for (int m = 2; m <= rho.N(); ++m) acc = kron(acc, partial_trace(rho.matrix(), rho.structure(), {m}));
    return DensityMatrix::unchecked(rho.structure(), acc);
}

double purity(const DensityMatrix& rho) {
    // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return rho.matrix().squaredNorm();
}

DensityMatrix dephase(const DensityMatrix& rho) {
    Mat d = rho.matrix().diagonal().asDiagonal();
    return DensityMatrix::unchecked(rho.structure(), d);
}

Spectrum hermitian_eig(const Mat& m, const Tolerances& tol) {
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol.herm) throw Error("not_hermitian", "matrix is not Hermitian (residual " + std::to_string(herm) + ")");
    Mat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const Eigen::Index n = h.rows();
    Spectrum sp;
    sp.values.resize(n);
    sp.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sp.values[k] = es.eigenvalues()[n - 1 - k];
        sp.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
    }
    sp.rank = static_cast<int>((sp.values.array() > tol.rank).count());
    Mat rec = sp.vectors * sp.values.cast<cplx>().asDiagonal() * sp.vectors.adjoint();
    sp.residual = n ? (rec - m).cwiseAbs().maxCoeff() : 0.0;
    return sp;
}

Spectrum hermitian_eig(const DensityMatrix& rho, const Tolerances& tol) { return hermitian_eig(rho.matrix(), tol); }

bool is_diagonal(const Mat& m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && std::abs(m(i, j)) > tol) return false;
    return true;
}

DensityMatrix pure_state(const ModeStructure& s, const Vec& psi) {
    if (static_cast<std::size_t>(psi.size()) != s.n()) throw Error("bad_structure", "vector length does not match structure");
    double nrm = psi.norm();
    if (nrm == 0.0) throw Error("invalid_state", "zero vector");
    Vec u = psi / nrm;
    return DensityMatrix::unchecked(s, u * u.adjoint());
}

DensityMatrix diagonal_state(const ModeStructure& s, const std::vector<double>& p) {
    if (p.size() != s.n()) throw Error("bad_structure", "diagonal length does not match structure");
    Mat m = Mat::Zero(s.n(), s.n());
    for (std::size_t i = 0; i < p.size(); ++i) m(i, i) = p[i];
    return DensityMatrix(s, m);
}

DensityMatrix maximally_mixed(const ModeStructure& s) {
    return DensityMatrix::unchecked(s, Mat::Identity(s.n(), s.n()) / static_cast<double>(s.n()));
}

std::size_t register_index(const std::vector<int>& a, const ModeStructure& s) {
    if (static_cast<int>(a.size()) != s.N()) throw Error("out_of_range", "index length does not match mode count");
    std::size_t r = 0;
    for (int m = 0; m < s.N(); ++m) {
        if (a[m] < 1 || a[m] > s.dims()[m])
            throw Error("out_of_range", "index component " + std::to_string(a[m]) + " outside 1.." + std::to_string(s.dims()[m]));
        r = r * s.dims()[m] + (a[m] - 1);
    }
    return r + 1;
}

std::vector<int> inverse_register(std::size_t a, const ModeStructure& s) {
    if (a < 1 || a > s.n()) throw Error("out_of_range", "scalar index " + std::to_string(a) + " outside 1.." + std::to_string(s.n()));
    auto d = digits_of(a - 1, s.dims());
    for (int& x : d) ++x;
    return d;
}

}  // namespace corrkit
