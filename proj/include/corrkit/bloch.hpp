#pragma once

#include "corrkit/state.hpp"

#include <map>
#include <vector>

namespace corrkit {

// index 0 is the identity; indices 1..n_m^2-1 are the generalized Gell-Mann
// matrices with tr(l_j l_k) = 2 delta_jk, enumerated by (alpha, beta) pairs
std::vector<Mat> gm_basis(int nm);

// scaled per-mode operators nu_k with tr(nu_j^dag nu_k) = n_m delta_jk
std::vector<Mat> usb_operators(int nm);

class OperatorBasis {
public:
    explicit OperatorBasis(ModeStructure s);
    const ModeStructure& structure() const noexcept { return s_; }
    const std::vector<Mat>& mode_operators(int label) const { return ops_.at(label - 1); }
    // composite element b_k = (nu_k1 x ... x nu_kN) / sqrt(n); k is 0-based per mode
    Mat element(const std::vector<int>& k) const;
    // all nonzero multi-indices in odometer order
    std::vector<std::vector<int>> indices() const;

private:
    ModeStructure s_;
    std::vector<std::vector<Mat>> ops_;
};

class BlochVector {
public:
    using Key = std::vector<int>;  // per-mode GM index, 0 = identity

    BlochVector() = default;
    explicit BlochVector(ModeStructure s) : s_(std::move(s)) {}

    const ModeStructure& structure() const noexcept { return s_; }
    const std::map<Key, double>& components() const noexcept { return c_; }
    double get(const Key& k) const;
    void set(const Key& k, double v);  // zero erases

    double norm2() const;
    double dot(const BlochVector& o) const;
    BlochVector operator-(const BlochVector& o) const;
    BlochVector operator+(const BlochVector& o) const;

private:
    ModeStructure s_;
    std::map<Key, double> c_;
};

BlochVector bloch_of(const DensityMatrix& rho);
Mat matrix_of(const BlochVector& g);               // (I + sqrt(n(n-1)) Gamma.b) / n, no checks
DensityMatrix state_of(const BlochVector& g, const Tolerances& tol = {});  // throws on unphysical

// Bloch vector of the reduction to the given modes (ascending labels)
BlochVector reduced_bloch(const BlochVector& g, const std::vector<int>& modes);
BlochVector reduced_bloch(const BlochVector& g, int mode);

// components whose set of non-identity positions is exactly `modes`
BlochVector correlation_vector(const BlochVector& g, const std::vector<int>& modes);
BlochVector liaison_vector(const BlochVector& g);

}  // namespace corrkit
