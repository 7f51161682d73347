#pragma once

#include "corrkit/state.hpp"

#include <string>
#include <vector>

namespace corrkit {

// minimum purity of an n_m-level reduction when L levels of the parent are equally populated
double p_mp(int nm, int L);

// smallest L in 2..n/n_max minimizing the mean-reduction-purity deficit
int l_star(const ModeStructure& s);

struct NormalizationReport {
    ModeStructure structure;
    int L_star = 0;
    std::vector<double> per_mode_purity;  // user mode order
    double n_correlance = 0;
    double n_diag_correlance = 0;
    double n_strong_discordance = 0;
};

// memoized per structure; safe for concurrent callers
const NormalizationReport& normalization_report(const ModeStructure& s);

double correlance_norm(const ModeStructure& s);
double diag_correlance_norm(int N);
double strong_discordance_norm(const ModeStructure& s);
// correlance reached by the best diagonal state
double diagonal_ceiling(const ModeStructure& s);

// The three closed forms, exposed so they can be cross-checked.
namespace norm_forms {
double mode_product(const ModeStructure& s);   // 1 - prod_m P_MP(n_m, L*)
double largest_mode(const ModeStructure& s);   // 1 - P_MP(n_max, L*) / (n/n_max)
double shortcut(const ModeStructure& s);       // 1 - 1/n, needs >= 2 modes of size n_max
bool shortcut_applies(const ModeStructure& s);
}  // namespace norm_forms

struct MeasureResult {
    std::string name;
    double raw = 0;
    double normalized = 0;
    ModeStructure structure;
};

double raw_correlance(const DensityMatrix& rho);
double correlance(const DensityMatrix& rho);
double diag_correlance(const DensityMatrix& rho, const Tolerances& tol = {});
double raw_nondiagonality(const DensityMatrix& rho);
int nondiagonal_sign(const DensityMatrix& rho, const Tolerances& tol = {});
double discordance(const DensityMatrix& rho, const Tolerances& tol = {});
double diagonal_discordance(const DensityMatrix& rho, const Tolerances& tol = {});
double strong_discordance(const DensityMatrix& rho);

struct RawStrongPair {
    double theta = 0;  // max{0, C - ceiling}
    double dsd = 0;    // min{C, ceiling}
};
RawStrongPair raw_strong_discordance_pair(const DensityMatrix& rho);

// everything at once, sharing one reduction product
struct MeasureReport {
    ModeStructure structure;
    double raw_correlance = 0, correlance = 0;
    double raw_nondiagonality = 0;
    int sgn = 0;
    double discordance = 0, diagonal_discordance = 0;
    double strong_discordance = 0;
    RawStrongPair raw_strong;
    bool diagonal = false;
    double diag_correlance = 0;  // only meaningful when diagonal
    NormalizationReport norms;
    std::vector<MeasureResult> results() const;
};
MeasureReport evaluate_all(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace corrkit
