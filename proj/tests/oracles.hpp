#pragma once

// Independent oracles used by the tests. These deliberately avoid the
// code paths they certify: the symmetric moment is recomputed from an
// explicit symmetrizer on the full tensor space, Chebyshev coefficients
// from the defining recurrence, and the probability-cap root from a
// scan-and-bisect search in extended precision.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cohbounds/state.hpp"

namespace oracles {

using cohbounds::Complex;
using cohbounds::Matrix;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// tr(rho^{(x)s} P_sym) with P_sym = (1/s!) sum_pi P_pi assembled as an
/// explicit dense matrix on the d^s-dimensional tensor space.
inline double symmetric_moment_brute_force(const Matrix& rho, int s) {
    const int d = static_cast<int>(rho.rows());
    long full_dim = 1;
    for (int k = 0; k < s; ++k) full_dim *= d;

    Matrix tensor_power = Matrix::Identity(1, 1);
    for (int k = 0; k < s; ++k) tensor_power = kron(tensor_power, rho);

    std::vector<int> perm(static_cast<std::size_t>(s));
    std::iota(perm.begin(), perm.end(), 0);
    Matrix symmetrizer = Matrix::Zero(full_dim, full_dim);
    long permutation_count = 0;
    std::vector<int> digits(static_cast<std::size_t>(s));
    do {
        ++permutation_count;
        for (long col = 0; col < full_dim; ++col) {
            long rest = col;
            for (int k = s - 1; k >= 0; --k) {
                digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % d);
                rest /= d;
            }
            long row = 0;
            for (int k = 0; k < s; ++k)
                row = row * d + digits[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
            symmetrizer(row, col) += Complex(1.0, 0.0);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    symmetrizer /= static_cast<double>(permutation_count);

    Complex trace(0.0, 0.0);
    for (long r = 0; r < full_dim; ++r)
        for (long c = 0; c < full_dim; ++c)
            trace += tensor_power(r, c) * symmetrizer(c, r);
    return trace.real();
}

/// Coefficients of the shifted Chebyshev polynomial T*_n, ascending powers
/// x^0..x^n, from T*_0 = 1, T*_1 = 2x - 1, T*_{m+1} = 2(2x-1) T*_m - T*_{m-1}.
inline std::vector<long long> shifted_chebyshev_recurrence(int n) {
    std::vector<long long> prev{1};
    if (n == 0) return prev;
    std::vector<long long> cur{-1, 2};
    for (int m = 1; m < n; ++m) {
        std::vector<long long> next(cur.size() + 1, 0);
        for (std::size_t k = 0; k < cur.size(); ++k) {
            next[k + 1] += 4 * cur[k];
            next[k] -= 2 * cur[k];
        }
        for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Maximal real root of (1-y)^t + (K-1)^{t-1} y^t = (K-1)^{t-1} beta on
/// [0, 1]: coarse scan from the right for the last sign change, then
/// bisection in extended precision. The left side is minimized exactly at
/// y = 1/K (its derivative vanishes where (K-1) y = 1 - y), which covers
/// the tangency case at the lower feasible endpoint where no sign change
/// exists for the scan to find.
inline double max_root_scan(int K, int t, double beta) {
    const auto f = [&](long double y) {
        return std::pow(1.0L - y, t) + std::pow(static_cast<long double>(K - 1), t - 1) *
                                           (std::pow(y, t) - static_cast<long double>(beta));
    };
    const int steps = 20000;
    long double hi = 1.0L, lo = -1.0L;
    for (int i = steps; i > 0; --i) {
        const long double y0 = static_cast<long double>(i - 1) / steps;
        const long double y1 = static_cast<long double>(i) / steps;
        if ((f(y0) <= 0.0L) != (f(y1) <= 0.0L)) {
            lo = y0;
            hi = y1;
            break;
        }
        if (f(y1) == 0.0L) return static_cast<double>(y1);
    }
    if (lo < 0.0L) {
        const long double minimizer = 1.0L / K;
        if (std::abs(f(minimizer)) <= 1e-15L) return static_cast<double>(minimizer);
        if (f(minimizer) < 0.0L) {
            // root squeezed between the minimizer and the next grid point
            lo = minimizer;
            hi = minimizer + 1.0L / steps;
        } else {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
    for (int i = 0; i < 300 && hi - lo > 1e-17L; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if ((f(lo) <= 0.0L) == (f(mid) <= 0.0L))
            lo = mid;
        else
            hi = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

inline std::string temp_path(const std::string& stem) {
    static std::mt19937_64 rng(std::random_device{}());
    return (std::filesystem::temp_directory_path() /
            (stem + "-" + std::to_string(rng()) + ".tmp"))
        .string();
}

} // namespace oracles
