#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cohbounds/coefficients.hpp"
#include "cohbounds/coherence.hpp"
#include "cohbounds/design.hpp"
#include "cohbounds/state.hpp"

namespace cohbounds {

/// Design moments beta_l^(s) = l^{1-s} d^s D_d^(s) tr(rho^{(x)s} P_sym)
/// for s = 1..t (stored with index s-1). With l = K these constrain the
/// statistics of the single assigned POVM.
struct BetaMoments {
    int ell = 0;
    std::vector<double> values;

    double order(int s) const { return values[static_cast<std::size_t>(s - 1)]; }
    int max_order() const { return static_cast<int>(values.size()); }
};

inline BetaMoments beta_moments(const DensityMatrix& rho, int K, int ell, int t) {
    if (t < 2) throw argument_error("beta moments need t >= 2");
    if (ell < 1 || K < 1 || K % ell != 0)
        throw argument_error("POVM size must divide the design size");
    const int d = rho.dim();
    BetaMoments beta;
    beta.ell = ell;
    beta.values.reserve(static_cast<std::size_t>(t));
    for (int s = 1; s <= t; ++s) {
        const double scale = std::pow(static_cast<double>(ell), 1 - s) *
                             std::pow(static_cast<double>(d), s) *
                             dimension_factor(d, s);
        beta.values.push_back(scale * symmetric_moment(rho, s));
    }
    return beta;
}

/// Maximal real root of (1 - y)^t + (K-1)^{t-1} y^t = (K-1)^{t-1} beta.
/// The left-hand side is strictly increasing on [1/K, 1] and the feasible
/// range of beta places the root inside that bracket, so plain bisection
/// converges; tolerance 1e-13 absolute.
inline double upsilon_root(int K, int t, double beta) {
    if (K < 2) throw argument_error("upsilon_root needs K >= 2");
    if (t < 2) throw argument_error("upsilon_root needs t >= 2");

    const double beta_min = std::pow(static_cast<double>(K), 1 - t);
    if (beta < beta_min - 1e-9 || beta > 1.0 + 1e-9)
        throw argument_error("design moment " + std::to_string(beta) +
                             " outside the feasible range");
    beta = std::clamp(beta, beta_min, 1.0);

    // Both sides divided by (K-1)^{t-1} to keep the evaluation scaled.
    const double km1 = static_cast<double>(K - 1);
    const auto shifted = [&](double y) {
        return std::pow(1.0 - y, t) / std::pow(km1, t - 1) + std::pow(y, t) - beta;
    };

    double lo = 1.0 / static_cast<double>(K);
    double hi = 1.0;
    if (shifted(lo) >= 0.0) return lo;
    if (shifted(hi) <= 0.0) return hi;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (shifted(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// The two-sided estimates on the averaged relative entropy of coherence
/// for one state and one design-POVM assignment, together with the exact
/// averaged value they sandwich.
struct BoundsReport {
    double upsilon = 0.0;     // min{M * root, 1}; probability cap
    BetaMoments beta;         // beta_l^(s) moments entering the estimates
    int n_used = 0;           // flexible-family order, min{t, 15}
    double lower_taylor = 0.0;
    double upper_taylor = 0.0;
    double lower_cheb = 0.0;
    double upper_cheb = 0.0;
    double exact_coherence = 0.0;

    /// Smallest of the four sandwich slacks; negative means a violation.
    double sandwich_slack() const {
        return std::min(std::min(exact_coherence - lower_taylor,
                                 upper_taylor - exact_coherence),
                        std::min(exact_coherence - lower_cheb,
                                 upper_cheb - exact_coherence));
    }
    bool sandwich_ok(double tol = 1e-9) const { return sandwich_slack() >= -tol; }
};

struct DesignMeta {
    int K = 0;  // number of design vectors
    int t = 0;  // certified strength
};

/// Evaluates the four estimates for M POVMs of l elements each assigned to
/// a t-design with K vectors:
///   lower/upper Taylor:  sums over a^(s), b^(s) with the leading term
///                        y l / t on the upper side;
///   lower/upper Chebyshev: sums over a~^(s), b~^(s) with leading term
///                        b~^(0) y l;
/// each followed by -ln y - S_1(rho), where y = min{M * root, 1} and the
/// root is taken at the full-set moment beta^(t).
inline BoundsReport evaluate_bounds(const std::vector<DesignPovm>& povms,
                                    const DesignMeta& meta,
                                    const DensityMatrix& rho) {
    if (povms.empty()) throw argument_error("evaluate_bounds needs at least one POVM");
    if (meta.t < 2) throw argument_error("bounds require design strength t >= 2");
    const int M = static_cast<int>(povms.size());
    const int ell = povms.front().size();
    for (const auto& p : povms)
        if (p.size() != ell || p.dim() != rho.dim())
            throw argument_error("POVMs must share one element count and dimension");
    if (ell * M != meta.K)
        throw argument_error("POVM assignment does not match the design size");

    BoundsReport report;
    report.beta = beta_moments(rho, meta.K, ell, meta.t);
    const BetaMoments beta_full =
        (ell == meta.K) ? report.beta : beta_moments(rho, meta.K, meta.K, meta.t);
    const double root = upsilon_root(meta.K, meta.t, beta_full.order(meta.t));
    const double y = std::min(static_cast<double>(M) * root, 1.0);
    report.upsilon = y;
    report.n_used = std::min(meta.t, 15);

    const auto [a, b] = taylor_coefficients(meta.t);
    const auto [fa, fb] = flexible_coefficients(report.n_used);

    const double entropy = von_neumann_entropy(rho);
    const double log_term = -std::log(y) - entropy;

    double sum_a = 0.0, sum_b = 0.0;
    double y_pow = 1.0;  // y^{1-s}, starting at s = 1
    for (int s = 1; s <= meta.t; ++s) {
        const double term = y_pow * report.beta.order(s);
        sum_a += a[static_cast<std::size_t>(s - 1)] * term;
        sum_b += b[static_cast<std::size_t>(s - 1)] * term;
        y_pow /= y;
    }
    double sum_fa = 0.0, sum_fb = 0.0;
    y_pow = 1.0;
    for (int s = 1; s <= report.n_used; ++s) {
        const double term = y_pow * report.beta.order(s);
        sum_fa += fa[static_cast<std::size_t>(s - 1)] * term;
        sum_fb += fb[static_cast<std::size_t>(s)] * term;
        y_pow /= y;
    }

    const double yl = y * static_cast<double>(ell);
    report.lower_taylor = sum_a + log_term;
    report.upper_taylor = yl / static_cast<double>(meta.t) + sum_b + log_term;
    report.lower_cheb = sum_fa + log_term;
    report.upper_cheb = fb[0] * yl + sum_fb + log_term;
    report.exact_coherence = average_coherence(povms, rho);
    return report;
}

/// Convenience wrapper: assigns the POVMs declared by the design itself.
inline BoundsReport evaluate_bounds(const QuantumDesign& design, const DensityMatrix& rho) {
    return evaluate_bounds(assign_povms(design), DesignMeta{design.size(), design.strength()},
                           rho);
}

} // namespace cohbounds
