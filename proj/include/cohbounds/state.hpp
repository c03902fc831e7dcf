#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "cohbounds/errors.hpp"

namespace cohbounds {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Validation tolerances for state construction.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEigResidualTol = 1e-10;
inline constexpr double kEigClampTol = 1e-8;

/// Eigenvalues of a density matrix, sorted descending. Values are clamped
/// to [0, 1]; their sum stays within 1e-10 of one.
struct Spectrum {
    std::vector<double> eigenvalues;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

/// A d-dimensional quantum state: Hermitian, positive semidefinite,
/// unit-trace complex matrix. Validated once on construction; the
/// eigendecomposition is cached so downstream operations stay cheap.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols() || entries_.rows() < 1)
            throw invalid_state_error("density matrix must be square and non-empty");

        const double herm_dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
        if (herm_dev > kHermitianTol)
            throw invalid_state_error("density matrix is not Hermitian (deviation " +
                                      std::to_string(herm_dev) + ")");

        const Complex tr = entries_.trace();
        if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol)
            throw invalid_state_error("density matrix trace differs from one");

        Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_);
        if (solver.info() != Eigen::Success)
            throw invalid_state_error("eigendecomposition failed");

        const Matrix reconstructed = solver.eigenvectors() *
                                     solver.eigenvalues().asDiagonal() *
                                     solver.eigenvectors().adjoint();
        if ((reconstructed - entries_).cwiseAbs().maxCoeff() > kEigResidualTol)
            throw invalid_state_error("eigendecomposition residual exceeds tolerance");

        const Eigen::VectorXd raw = solver.eigenvalues();
        if (raw.minCoeff() < -kPsdTol)
            throw invalid_state_error("density matrix is not positive semidefinite");

        spectrum_.eigenvalues.reserve(static_cast<std::size_t>(raw.size()));
        for (Eigen::Index i = 0; i < raw.size(); ++i) {
            const double v = raw[i];
            if (v < -kEigClampTol || v > 1.0 + kEigClampTol)
                throw invalid_state_error("eigenvalue outside [0, 1] beyond clamp tolerance");
            spectrum_.eigenvalues.push_back(std::clamp(v, 0.0, 1.0));
        }
        std::sort(spectrum_.eigenvalues.begin(), spectrum_.eigenvalues.end(),
                  std::greater<double>());
    }

    static DensityMatrix maximally_mixed(int dim) {
        if (dim < 1) throw argument_error("dimension must be positive");
        return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }
    const Spectrum& cached_spectrum() const { return spectrum_; }

private:
    Matrix entries_;
    Spectrum spectrum_;
};

/// Qubit state parametrized by its minimal eigenvalue and the Bloch
/// direction of the major axis.
struct BlochSpec {
    double lambda;                    // minimal eigenvalue, in [0, 1/2]
    std::array<double, 3> direction;  // unit vector

    BlochSpec(double lambda_, const std::array<double, 3>& direction_)
        : lambda(lambda_), direction(direction_) {
        if (!(lambda >= 0.0 && lambda <= 0.5))
            throw argument_error("minimal eigenvalue must lie in [0, 1/2]");
        const double norm = std::sqrt(direction[0] * direction[0] +
                                      direction[1] * direction[1] +
                                      direction[2] * direction[2]);
        if (std::abs(norm - 1.0) > 1e-12)
            throw argument_error("Bloch direction must be a unit vector");
    }
};

inline const Spectrum& spectrum(const DensityMatrix& rho) {
    return rho.cached_spectrum();
}

/// S_1(rho) = -tr(rho ln rho) in nats, with 0 ln 0 = 0.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double lam : rho.cached_spectrum().eigenvalues)
        if (lam > 0.0) s -= lam * std::log(lam);
    return s;
}

/// Power sums [tr(rho^1), ..., tr(rho^t)] of the spectrum.
inline std::vector<double> power_sums(const DensityMatrix& rho, int t) {
    if (t < 1) throw argument_error("power-sum order must be at least 1");
    const auto& eig = rho.cached_spectrum().eigenvalues;
    std::vector<double> sums(static_cast<std::size_t>(t), 0.0);
    std::vector<double> powers(eig.begin(), eig.end());
    for (int k = 0; k < t; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < powers.size(); ++i) {
            acc += powers[i];
            powers[i] *= eig[i];
        }
        sums[static_cast<std::size_t>(k)] = acc;
    }
    return sums;
}

/// tr(rho^{(x)s} P_sym), the projection of s copies of rho onto the
/// symmetric subspace. Equals the complete homogeneous symmetric
/// polynomial h_s of the eigenvalues; evaluated through the Newton-type
/// recursion s h_s = sum_{k=1}^{s} p_k h_{s-k} with h_0 = 1.
inline double symmetric_moment(const DensityMatrix& rho, int s) {
    if (s < 1) throw argument_error("symmetric-moment order must be at least 1");
    const std::vector<double> p = power_sums(rho, s);
    std::vector<double> h(static_cast<std::size_t>(s) + 1, 0.0);
    h[0] = 1.0;
    for (int m = 1; m <= s; ++m) {
        double acc = 0.0;
        for (int k = 1; k <= m; ++k)
            acc += p[static_cast<std::size_t>(k - 1)] * h[static_cast<std::size_t>(m - k)];
        h[static_cast<std::size_t>(m)] = acc / static_cast<double>(m);
    }
    return h[static_cast<std::size_t>(s)];
}

/// (I + (1 - 2 lambda) n . sigma) / 2 with spectrum {1 - lambda, lambda}.
inline DensityMatrix qubit_from_bloch(const BlochSpec& spec) {
    const double r = 1.0 - 2.0 * spec.lambda;
    const double x = r * spec.direction[0];
    const double y = r * spec.direction[1];
    const double z = r * spec.direction[2];
    Matrix m(2, 2);
    m(0, 0) = Complex(0.5 * (1.0 + z), 0.0);
    m(1, 1) = Complex(0.5 * (1.0 - z), 0.0);
    m(0, 1) = Complex(0.5 * x, -0.5 * y);
    m(1, 0) = Complex(0.5 * x, 0.5 * y);
    return DensityMatrix(std::move(m));
}

} // namespace cohbounds
