#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cohbounds/bounds.hpp"
#include "cohbounds/coherence.hpp"
#include "cohbounds/design.hpp"
#include "cohbounds/random.hpp"
#include "cohbounds/state.hpp"

namespace cohbounds {

/// Outcome of the randomized verification run: worst-case slack of the
/// two-sided estimates, of the probability cap, and of the power-sum
/// identity over the sampled ensemble.
struct CheckReport {
    int samples = 0;
    double worst_sandwich_slack = std::numeric_limits<double>::infinity();
    double worst_cap_slack = std::numeric_limits<double>::infinity();
    double worst_moment_residual = 0.0;
    double min_envelope_gap = std::numeric_limits<double>::infinity();
    std::vector<std::string> violations;  // at most a handful, for reporting

    bool passed(double tol = 1e-9) const {
        return worst_sandwich_slack >= -tol && worst_cap_slack >= -tol &&
               worst_moment_residual <= tol;
    }
};

namespace detail {

inline std::string describe_qubit(const BlochSpec& spec) {
    std::ostringstream os;
    os << "lambda=" << spec.lambda << " direction=(" << spec.direction[0] << ","
       << spec.direction[1] << "," << spec.direction[2] << ")";
    return os.str();
}

inline std::string describe_spectrum(const DensityMatrix& rho) {
    std::ostringstream os;
    os << "spectrum=(";
    const auto& eig = rho.cached_spectrum().eigenvalues;
    for (std::size_t i = 0; i < eig.size(); ++i)
        os << (i ? "," : "") << eig[i];
    os << ")";
    return os.str();
}

} // namespace detail

/// Draws seeded random states and verifies, per state: the four estimates
/// sandwich the exact averaged coherence, every outcome probability stays
/// below the cap, and the power sums of the outcome distributions match
/// the design-moment prediction for s = 2..t.
inline CheckReport run_check(const QuantumDesign& design, int samples, std::uint64_t seed) {
    if (samples < 1) throw argument_error("check needs at least one sample");
    const std::vector<DesignPovm> povms = assign_povms(design);
    const DesignMeta meta{design.size(), design.strength()};
    const int d = design.dim();
    const int ell = povms.front().size();
    StateSampler sampler(seed);

    CheckReport out;
    out.samples = samples;
    for (int i = 0; i < samples; ++i) {
        std::string description;
        DensityMatrix rho = [&] {
            if (d == 2) {
                const BlochSpec spec = sampler.qubit_spec();
                description = detail::describe_qubit(spec);
                return qubit_from_bloch(spec);
            }
            DensityMatrix state = sampler.random_state(d);
            description = detail::describe_spectrum(state);
            return state;
        }();

        const BoundsReport report = evaluate_bounds(povms, meta, rho);
        const double slack = report.sandwich_slack();
        out.worst_sandwich_slack = std::min(out.worst_sandwich_slack, slack);
        const double gap = std::min(report.upper_taylor, report.upper_cheb) -
                           std::max(report.lower_taylor, report.lower_cheb);
        out.min_envelope_gap = std::min(out.min_envelope_gap, gap);

        double max_p = 0.0;
        std::vector<double> powers(static_cast<std::size_t>(meta.t) + 1, 0.0);
        for (const auto& povm : povms) {
            const OutcomeDistribution dist = outcome_probabilities(povm, rho);
            for (double p : dist.probabilities) {
                max_p = std::max(max_p, p);
                double pk = p * p;
                for (int s = 2; s <= meta.t; ++s) {
                    powers[static_cast<std::size_t>(s)] += pk;
                    pk *= p;
                }
            }
        }
        out.worst_cap_slack = std::min(out.worst_cap_slack, report.upsilon - max_p);

        double moment_residual = 0.0;
        for (int s = 2; s <= meta.t; ++s) {
            const double predicted = static_cast<double>(meta.K) *
                                     std::pow(static_cast<double>(ell), -s) *
                                     std::pow(static_cast<double>(d), s) *
                                     dimension_factor(d, s) * symmetric_moment(rho, s);
            moment_residual =
                std::max(moment_residual,
                         std::abs(powers[static_cast<std::size_t>(s)] - predicted));
        }
        out.worst_moment_residual = std::max(out.worst_moment_residual, moment_residual);

        if ((slack < -1e-9 || report.upsilon - max_p < -1e-9 || moment_residual > 1e-9) &&
            out.violations.size() < 5)
            out.violations.push_back("sample " + std::to_string(i) + ": " + description);
    }
    return out;
}

} // namespace cohbounds
