#pragma once

#include "corrkit/decomp.hpp"
#include "corrkit/rng.hpp"
#include "corrkit/state.hpp"

#include <cstdint>

namespace corrkit {

Vec haar_vector(std::size_t n, Rng& rng);
DensityMatrix haar_pure(const ModeStructure& s, Rng& rng);
DensityMatrix hs_mixed(const ModeStructure& s, Rng& rng);
DensityMatrix random_diagonal(const ModeStructure& s, Rng& rng);
std::vector<double> flat_dirichlet(std::size_t k, Rng& rng);

DensityMatrix haar_pure(const ModeStructure& s, std::uint64_t seed);
DensityMatrix hs_mixed(const ModeStructure& s, std::uint64_t seed);
DensityMatrix random_diagonal(const ModeStructure& s, std::uint64_t seed);

struct FamilyConfig {
    // member counts: D for families 1, 3; D_m per mode for 2, 4, 5, 6.
    // 0 means the default cap (n^2, resp. n_m^2)
    int D = 0;
    std::vector<int> mode_sizes;
    // draw the member count uniformly from 1..cap for every sample
    bool random_size = true;
};

Decomposition family_decomposition(int family, const ModeStructure& s, Rng& rng, const FamilyConfig& cfg = {});
DensityMatrix family_state(int family, const ModeStructure& s, Rng& rng, const FamilyConfig& cfg = {});
DensityMatrix family_state(int family, const ModeStructure& s, std::uint64_t seed, const FamilyConfig& cfg = {});

DensityMatrix werner(double a);
DensityMatrix mixture40(double a);
DensityMatrix bell_phi_plus();
DensityMatrix ghz(int N);                       // qubits
DensityMatrix ghz(const ModeStructure& s);      // (|1..1> + |n_1..n_N>)/sqrt 2
DensityMatrix bell_product();                   // Phi+ (x) Phi+ on (1,2), (3,4)

}  // namespace corrkit
