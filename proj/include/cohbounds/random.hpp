#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "cohbounds/state.hpp"

namespace cohbounds {

/// Seeded sampler for the randomized verification harness. Distributions
/// are drawn from raw engine output rather than std:: distribution
/// adapters so that a seed pins the byte-exact sequence everywhere.
class StateSampler {
public:
    explicit StateSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = 1.0 - uniform();  // (0, 1]
        const double v = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u));
        const double angle = 2.0 * std::numbers::pi * v;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::array<double, 3> unit_direction() {
        const double z = 2.0 * uniform() - 1.0;
        const double phi = 2.0 * std::numbers::pi * uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    /// Minimal eigenvalue uniform on [0, 1/2], direction uniform on the sphere.
    BlochSpec qubit_spec() {
        const double lambda = 0.5 * uniform();
        return BlochSpec(lambda, unit_direction());
    }

    Matrix haar_unitary(int d) {
        Matrix g(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                g(i, j) = Complex(gaussian(), gaussian()) / std::sqrt(2.0);
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        const Matrix r = qr.matrixQR();
        for (int i = 0; i < d; ++i) {
            const Complex diag = r(i, i);
            const Complex phase = (std::abs(diag) > 0.0) ? diag / std::abs(diag) : Complex(1, 0);
            q.col(i) *= phase;
        }
        return q;
    }

    /// d = 2: Bloch sampling; d > 2: spectrum from the uniform simplex
    /// conjugated by a Haar-random unitary.
    DensityMatrix random_state(int d) {
        if (d == 2) return qubit_from_bloch(qubit_spec());
        Eigen::VectorXd spec(d);
        double total = 0.0;
        for (int i = 0; i < d; ++i) {
            spec[i] = -std::log(1.0 - uniform());
            total += spec[i];
        }
        spec /= total;
        const Matrix u = haar_unitary(d);
        Matrix rho = u * spec.cast<Complex>().asDiagonal() * u.adjoint();
        rho = Complex(0.5, 0.0) * (rho + rho.adjoint().eval());  // scrub rounding skew
        return DensityMatrix(std::move(rho));
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cohbounds
