#include "corrkit/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace corrkit {

double p_mp(int nm, int L) {
    if (nm < 1 || L < 1) throw Error("out_of_range", "p_mp needs n_m >= 1 and L >= 1");
    const int q = L / nm, r = L % nm;
    const double a = static_cast<double>(q + 1) / L, b = static_cast<double>(q) / L;
    return r * a * a + (nm - r) * b * b;
}

namespace {

void require_multimode(const ModeStructure& s) {
    if (s.N() < 2) throw Error("unsupported_structure", "structure " + s.str() + " has a single mode");
    if (s.nmaxnot() < 2)
        throw Error("unsupported_structure", "structure " + s.str() + " has no room for nonlocal correlation");
}

// 1 - M(L): mean over modes of the rescaled reduction purities
double purity_deficit(const std::vector<int>& dims, int L) {
    double acc = 0;
    for (int nm : dims) acc += (nm * p_mp(nm, L) - 1.0) / (nm - 1.0);
    return acc / static_cast<double>(dims.size());
}

std::vector<int> sorted_dims(const ModeStructure& s) {
    auto d = s.dims();
    std::stable_sort(d.begin(), d.end());
    return d;
}

}  // namespace

int l_star(const ModeStructure& s) {
    require_multimode(s);
    auto d = sorted_dims(s);
    // modes of size 1 carry no purity information
    d.erase(std::remove(d.begin(), d.end(), 1), d.end());
    const int top = static_cast<int>(s.nmaxnot());
    int best_L = 2;
    double best = purity_deficit(d, 2);
    for (int L = 3; L <= top; ++L) {
        double v = purity_deficit(d, L);
        if (v < best - 1e-13 * std::max(1.0, std::abs(best))) {
            best = v;
            best_L = L;
        }
    }
    return best_L;
}

namespace norm_forms {

double mode_product(const ModeStructure& s) {
    const int L = l_star(s);
    double prod = 1;
    for (int nm : s.dims()) prod *= p_mp(nm, L);
    return 1.0 - prod;
}

double largest_mode(const ModeStructure& s) {
    const int L = l_star(s);
    return 1.0 - p_mp(s.nmax(), L) / static_cast<double>(s.nmaxnot());
}

bool shortcut_applies(const ModeStructure& s) {
    return std::count(s.dims().begin(), s.dims().end(), s.nmax()) >= 2;
}

double shortcut(const ModeStructure& s) {
    require_multimode(s);
    if (!shortcut_applies(s)) throw Error("unsupported_structure", "shortcut needs two modes of maximal size");
    return 1.0 - 1.0 / static_cast<double>(s.n());
}

}  // namespace norm_forms

const NormalizationReport& normalization_report(const ModeStructure& s) {
    static std::shared_mutex mu;
    static std::map<std::vector<int>, std::unique_ptr<NormalizationReport>> memo;
    {
        std::shared_lock lk(mu);
        auto it = memo.find(s.dims());
        if (it != memo.end()) return *it->second;
    }
    auto rep = std::make_unique<NormalizationReport>();
    rep->structure = s;
    rep->L_star = l_star(s);
    for (int nm : s.dims()) rep->per_mode_purity.push_back(p_mp(nm, rep->L_star));
    rep->n_correlance = norm_forms::mode_product(s);
    rep->n_diag_correlance = diag_correlance_norm(s.N());
    // the diagonal ceiling (2^(N-1)-1)/2^N equals n_diag_correlance
    rep->n_strong_discordance = 1.0 - rep->n_diag_correlance / rep->n_correlance;
    std::unique_lock lk(mu);
    auto [it, fresh] = memo.emplace(s.dims(), std::move(rep));
    return *it->second;
}

double correlance_norm(const ModeStructure& s) { return normalization_report(s).n_correlance; }

double diag_correlance_norm(int N) {
    if (N < 2) throw Error("unsupported_structure", "diagonal correlance needs at least two modes");
    return 0.5 - std::ldexp(1.0, -N);
}

double strong_discordance_norm(const ModeStructure& s) { return normalization_report(s).n_strong_discordance; }

double diagonal_ceiling(const ModeStructure& s) { return 1.0 - strong_discordance_norm(s); }

double raw_correlance(const DensityMatrix& rho) {
    return (rho.matrix() - reduction_product(rho).matrix()).squaredNorm();
}

double correlance(const DensityMatrix& rho) { return raw_correlance(rho) / correlance_norm(rho.structure()); }

double diag_correlance(const DensityMatrix& rho, const Tolerances& tol) {
    if (!is_diagonal(rho.matrix(), tol.diag))
        throw Error("not_diagonal", "diagonal correlance needs a diagonal input state");
    return raw_correlance(rho) / diag_correlance_norm(rho.N());
}

double raw_nondiagonality(const DensityMatrix& rho) {
    return (rho.matrix() - dephase(rho).matrix()).squaredNorm();
}

int nondiagonal_sign(const DensityMatrix& rho, const Tolerances& tol) {
    return raw_nondiagonality(rho) > tol.offdiag ? 1 : 0;
}

double discordance(const DensityMatrix& rho, const Tolerances& tol) {
    return nondiagonal_sign(rho, tol) ? correlance(rho) : 0.0;
}

double diagonal_discordance(const DensityMatrix& rho, const Tolerances& tol) {
    return nondiagonal_sign(rho, tol) ? 0.0 : correlance(rho);
}

namespace {

// The best diagonal state has raw correlance exactly 1/2 - 1/2^N, so the
// comparison is done before normalizing to keep diagonal inputs at exactly 0.
RawStrongPair split_at_ceiling(double raw, const NormalizationReport& nr) {
    const double excess = std::max(0.0, raw - nr.n_diag_correlance) / nr.n_correlance;
    return {excess, raw / nr.n_correlance - excess};
}

}  // namespace

RawStrongPair raw_strong_discordance_pair(const DensityMatrix& rho) {
    return split_at_ceiling(raw_correlance(rho), normalization_report(rho.structure()));
}

double strong_discordance(const DensityMatrix& rho) {
    return raw_strong_discordance_pair(rho).theta / strong_discordance_norm(rho.structure());
}

MeasureReport evaluate_all(const DensityMatrix& rho, const Tolerances& tol) {
    MeasureReport r;
    r.structure = rho.structure();
    r.norms = normalization_report(rho.structure());
    r.raw_correlance = raw_correlance(rho);
    r.correlance = r.raw_correlance / r.norms.n_correlance;
    r.raw_nondiagonality = raw_nondiagonality(rho);
    r.sgn = r.raw_nondiagonality > tol.offdiag ? 1 : 0;
    r.discordance = r.sgn ? r.correlance : 0.0;
    r.diagonal_discordance = r.sgn ? 0.0 : r.correlance;
    r.raw_strong = split_at_ceiling(r.raw_correlance, r.norms);
    r.strong_discordance = r.raw_strong.theta / r.norms.n_strong_discordance;
    r.diagonal = is_diagonal(rho.matrix(), tol.diag);
    if (r.diagonal) r.diag_correlance = r.raw_correlance / r.norms.n_diag_correlance;
    return r;
}

std::vector<MeasureResult> MeasureReport::results() const {
    std::vector<MeasureResult> v;
    v.push_back({"correlance", raw_correlance, correlance, structure});
    v.push_back({"discordance", sgn * raw_correlance, discordance, structure});
    v.push_back({"diagonal_discordance", (1 - sgn) * raw_correlance, diagonal_discordance, structure});
    v.push_back({"strong_discordance", raw_strong.theta, strong_discordance, structure});
    v.push_back({"nondiagonality", raw_nondiagonality, raw_nondiagonality, structure});
    if (diagonal) v.push_back({"diag_correlance", raw_correlance, diag_correlance, structure});
    return v;
}

}  // namespace corrkit
