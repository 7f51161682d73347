#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrkit {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Every failure carries a short machine code ("invalid_state", "out_of_range", ...)
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct Tolerances {
    double herm = 1e-9;
    double trace = 1e-9;
    double psd = 1e-9;
    double rank = 1e-10;
    double eig = 1e-10;
    double diag = 1e-10;     // largest |off-diagonal| still counted as diagonal
    double offdiag = 1e-12;  // raw nondiagonality above this => sgn = 1
};

// Mode dimensions (n_1, ..., n_N). Labels are 1-based, mode 1 is leftmost.
class ModeStructure {
public:
    ModeStructure() = default;
    explicit ModeStructure(std::vector<int> dims);
    ModeStructure(std::initializer_list<int> dims) : ModeStructure(std::vector<int>(dims)) {}

    const std::vector<int>& dims() const noexcept { return dims_; }
    int N() const noexcept { return static_cast<int>(dims_.size()); }
    std::size_t n() const noexcept { return n_; }
    int dim(int label) const;  // 1-based
    int nmax() const;
    std::size_t nmaxnot() const { return n_ / static_cast<std::size_t>(nmax()); }
    std::string str() const;  // "2x3x4"

    bool operator==(const ModeStructure& o) const { return dims_ == o.dims_; }
    bool operator!=(const ModeStructure& o) const { return dims_ != o.dims_; }
    bool operator<(const ModeStructure& o) const { return dims_ < o.dims_; }

private:
    std::vector<int> dims_;
    std::size_t n_ = 0;
};

ModeStructure parse_dims(const std::string& text);  // "2x3x4"
ModeStructure concat(const ModeStructure& a, const ModeStructure& b);
// every structure with N >= 2, all n_m >= 2 and n <= max_n; ordered = all mode orders
std::vector<ModeStructure> structures_up_to(std::size_t max_n, bool ordered);

struct Violation {
    std::string kind;  // "dims", "hermiticity", "trace", "psd"
    double residual;
};

struct Validation {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string message() const;
};

Validation validate_state(const ModeStructure& s, const Mat& m, const Tolerances& tol = {});

class DensityMatrix {
public:
    // checks the state; throws Error("invalid_state") with the residuals
    DensityMatrix(ModeStructure s, Mat m, const Tolerances& tol = {});
    // for results that are valid by construction
    static DensityMatrix unchecked(ModeStructure s, Mat m);

    const ModeStructure& structure() const noexcept { return s_; }
    const Mat& matrix() const noexcept { return m_; }
    std::size_t n() const noexcept { return s_.n(); }
    int N() const noexcept { return s_.N(); }

private:
    DensityMatrix() = default;
    ModeStructure s_;
    Mat m_;
};

struct Spectrum {
    Eigen::VectorXd values;  // descending
    Mat vectors;             // column k pairs with values[k]
    int rank = 0;
    double residual = 0.0;   // max-abs reconstruction error
};

Mat kron(const Mat& a, const Mat& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

// keep: 1-based labels, distinct; the output modes follow the order of keep
Mat partial_trace(const Mat& m, const ModeStructure& s, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix permute_modes(const DensityMatrix& rho, const std::vector<int>& order);

DensityMatrix reduction_product(const DensityMatrix& rho);
double purity(const DensityMatrix& rho);
DensityMatrix dephase(const DensityMatrix& rho);
Spectrum hermitian_eig(const Mat& m, const Tolerances& tol = {});
Spectrum hermitian_eig(const DensityMatrix& rho, const Tolerances& tol = {});

bool is_diagonal(const Mat& m, double tol);
DensityMatrix pure_state(const ModeStructure& s, const Vec& psi);  // normalizes psi
DensityMatrix diagonal_state(const ModeStructure& s, const std::vector<double>& p);
DensityMatrix maximally_mixed(const ModeStructure& s);

// 1-based register functions
std::size_t register_index(const std::vector<int>& a, const ModeStructure& s);
std::vector<int> inverse_register(std::size_t a, const ModeStructure& s);

}  // namespace corrkit
