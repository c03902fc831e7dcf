#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cohbounds/design.hpp"
#include "cohbounds/errors.hpp"
#include "cohbounds/state.hpp"

namespace cohbounds {

/// Outcome probabilities of one rank-one POVM measurement.
struct OutcomeDistribution {
    std::vector<double> probabilities;

    int size() const { return static_cast<int>(probabilities.size()); }
};

/// p_j = (d/l) <phi_j|rho|phi_j>. Expectation values of rank-one effects
/// are nonnegative; dips below -1e-12 abort, smaller ones clamp to zero.
inline OutcomeDistribution outcome_probabilities(const DesignPovm& povm,
                                                 const DensityMatrix& rho) {
    if (povm.dim() != rho.dim())
        throw argument_error("POVM and state dimensions differ");
    OutcomeDistribution dist;
    dist.probabilities.reserve(povm.vectors().size());
    double sum = 0.0;
    for (const auto& v : povm.vectors()) {
        const double p = povm.weight() * std::real(Complex(v.adjoint() * rho.matrix() * v));
        if (p < -1e-12)
            throw invalid_state_error("negative outcome probability " + std::to_string(p));
        const double clamped = std::clamp(p, 0.0, 1.0);
        dist.probabilities.push_back(clamped);
        sum += clamped;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw invalid_state_error("outcome probabilities do not sum to one");
    return dist;
}

/// H_1(p) = -sum_j p_j ln p_j in nats, with 0 ln 0 = 0.
inline double shannon_entropy(const OutcomeDistribution& dist) {
    double h = 0.0;
    for (double p : dist.probabilities)
        if (p > 0.0) h -= p * std::log(p);
    return h;
}

/// Relative entropy of coherence with respect to a rank-one POVM,
/// C_1(M|rho) = H_1(M|rho) - S_1(rho). The Naimark dilation reduces to
/// this expression on the original space.
inline double coherence(const DesignPovm& povm, const DensityMatrix& rho) {
    return shannon_entropy(outcome_probabilities(povm, rho)) - von_neumann_entropy(rho);
}

/// (1/M) sum_m C_1(E^(m)|rho) over the assigned POVMs.
inline double average_coherence(const std::vector<DesignPovm>& povms,
                                const DensityMatrix& rho) {
    if (povms.empty()) throw argument_error("average_coherence needs at least one POVM");
    double acc = 0.0;
    for (const auto& povm : povms) acc += coherence(povm, rho);
    return acc / static_cast<double>(povms.size());
}

} // namespace cohbounds
