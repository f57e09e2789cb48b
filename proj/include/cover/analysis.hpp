#pragma once

#include <functional>
#include <vector>

#include "cover/instance.hpp"

namespace cover {

struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    // Improper integrals over [0, inf) are truncated where the decaying
    // envelope drops below this.
    double envelope_cutoff = 1e-14;
};

// Adaptive Simpson on [a, b]. Throws NumericError when the refinement depth
// is exhausted before the tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

// Integral over [0, inf) of an integrand bounded by scale * exp(-rate * z).
double integrate_to_infinity(const std::function<double(double)>& f, double rate,
                             double scale, const QuadratureConfig& cfg = {});

// H_k = 1 + 1/2 + ... + 1/k.
double harmonic(int k);

// Integral of (1 - (1 - e^{-(1-y) z})^k) * e^{-y z} over z in [0, inf).
// Equals H_k at y = 0 and is nonincreasing in y on [0, 1].
double offline_factor_integral(double y, int k, const QuadratureConfig& cfg = {});

// 2k/(k+1): selection-probability-to-x ratio bound for half-integral inputs.
double half_integral_bound(int k);

// Exact Pr[v selected] for the clock-argmin scheme on an irreducible
// v-complete instance (v = last arrival, adjacent to every element, all
// other subsets singletons).
double exact_offline_probability(const PseudoInstance& pi,
                                 const QuadratureConfig& cfg = {});

// f(z, y, r) = 1 - r^alpha * e^{-z max(r/alpha - y, 0)}: the per-element
// no-mark probability lower bound of the penalized simulated-clock scheme.
double penalized_f(double z, double y, double r, double alpha);

// argmin_r f(z, y, r) on r in [0, 1].
double r_star(double z, double y, double alpha);

// alpha * int_0^{1-e^{-alpha}} (1-t^k)/(1-t) dt
//   + (alpha/e) * int_{1-e^{-alpha}}^1 (1-t^k)/(1-t)^{1+1/alpha} dt.
// Diverges for alpha <= 1 (returns +infinity).
double subset_arrival_factor(double alpha, int k, const QuadratureConfig& cfg = {});

// The two tail integrals over t in [1-e^{-alpha}, 1], exposed separately so
// their ratio can be checked against 7e/3.
double tail_integral_singular(double alpha, int k, const QuadratureConfig& cfg = {});
double tail_integral_plain(double alpha, int k, const QuadratureConfig& cfg = {});

// Closed-form value of int_0^inf (1 - (1 - r1^a e^{-(r1/a) z})(1 - r2^a
// e^{-(r2/a) z})) dz for the a = alpha refined edge analysis.
double edge_refined_inner(double alpha, double r1, double r2);

// max over r1, r2 in [0, 1] of edge_refined_inner (1/64 grid, then
// coordinate golden-section refinement).
double edge_refined_factor(double alpha);

struct AlphaOptimum {
    double alpha = 0.0;
    double value = 0.0;
};

// min over alpha in [lo, hi] (coarse grid plus golden-section).
AlphaOptimum minimize_over_alpha(const std::function<double(double)>& fn,
                                 double lo = 0.5, double hi = 8.0);

// Exact Pr[v selected] for the penalized simulated-clock scheme on an
// irreducible v-complete pseudo-instance.
double exact_subset_arrival_probability(const PseudoInstance& pi, double alpha,
                                        const QuadratureConfig& cfg = {});

struct EdgeCoverConstants {
    double c = 0.0;
    double ln_c_over_p = 0.0;
    double g0 = 0.0;
};

EdgeCoverConstants edge_cover_constants(double p);

struct FactorRow {
    double alpha = 0.0;
    int k = 0;
    double factor = 0.0;
};

using FactorTable = std::vector<FactorRow>;

FactorTable make_factor_table(const std::vector<double>& alpha_grid,
                              const std::vector<int>& k_grid,
                              const QuadratureConfig& cfg = {});

}  // namespace cover
