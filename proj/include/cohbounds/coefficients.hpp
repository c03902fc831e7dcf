#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "cohbounds/design.hpp"
#include "cohbounds/errors.hpp"

namespace cohbounds {

namespace detail {

/// Exact sum of fractions num_k / div_k over a common denominator, rounded
/// to double once at the end. The coefficient sums below mix terms that
/// differ by many orders of magnitude and partially cancel, so naive
/// floating-point accumulation loses the small residue that downstream
/// saturation identities depend on.
inline double exact_fraction_sum(const std::vector<std::pair<long long, long long>>& terms) {
    unsigned long long common = 1;
    for (const auto& [num, div] : terms)
        common = std::lcm(common, static_cast<unsigned long long>(div));
    __int128 acc = 0;
    for (const auto& [num, div] : terms)
        acc += static_cast<__int128>(num) *
               static_cast<__int128>(common / static_cast<unsigned long long>(div));
    return static_cast<double>(static_cast<long double>(acc) /
                               static_cast<long double>(common));
}

} // namespace detail

/// Taylor-scheme coefficient families a^(s), b^(s) for s = 1..t (returned
/// with index s-1):
///   a^(1) = sum_{r=1}^{t-1} 1/r,
///   a^(s) = (-1)^{s-1} sum_{r=s-1}^{t-1} C(r, s-1)/r   (s >= 2),
///   b^(1) = sum_{r=2}^{t-1} 1/r,  b^(s) = a^(s)/s      (s >= 2).
inline std::pair<std::vector<double>, std::vector<double>>
taylor_coefficients(int t) {
    if (t < 2 || t > 30) throw argument_error("taylor order must lie in [2, 30]");
    std::vector<double> a(static_cast<std::size_t>(t));
    std::vector<double> b(static_cast<std::size_t>(t));
    {
        std::vector<std::pair<long long, long long>> terms;
        for (int r = 1; r <= t - 1; ++r) terms.emplace_back(1, r);
        a[0] = detail::exact_fraction_sum(terms);
        terms.erase(terms.begin());  // drop r = 1
        b[0] = terms.empty() ? 0.0 : detail::exact_fraction_sum(terms);
    }
    for (int s = 2; s <= t; ++s) {
        std::vector<std::pair<long long, long long>> terms;
        for (int r = s - 1; r <= t - 1; ++r)
            terms.emplace_back(static_cast<long long>(binomial(r, s - 1)), r);
        const double magnitude = detail::exact_fraction_sum(terms);
        const double sign = (s % 2 == 1) ? 1.0 : -1.0;  // (-1)^{s-1}
        a[static_cast<std::size_t>(s - 1)] = sign * magnitude;
        b[static_cast<std::size_t>(s - 1)] = sign * magnitude / static_cast<double>(s);
    }
    return {std::move(a), std::move(b)};
}

/// Exact integer coefficients of x^s (s = 1..n) in the shifted Chebyshev
/// polynomial T*_n(x) = T_n(2x - 1):
///   c^(s) = (-1)^{n+s} 2^{2s-1} [2 C(n+s, n-s) - C(n+s-1, n-s)].
inline std::vector<long long> chebyshev_integer_coefficients(int n) {
    if (n < 1 || n > 15) throw argument_error("chebyshev order must lie in [1, 15]");
    std::vector<long long> c(static_cast<std::size_t>(n));
    for (int s = 1; s <= n; ++s) {
        const long long bracket =
            2 * static_cast<long long>(binomial(n + s, n - s)) -
            static_cast<long long>(binomial(n + s - 1, n - s));
        const long long sign = ((n + s) % 2 == 0) ? 1 : -1;
        c[static_cast<std::size_t>(s - 1)] = sign * (1LL << (2 * s - 1)) * bracket;
    }
    return c;
}

inline std::vector<double> chebyshev_coefficients(int n) {
    const auto ints = chebyshev_integer_coefficients(n);
    return std::vector<double>(ints.begin(), ints.end());
}

/// Flexible (Lanczos-style) coefficient families derived from the shifted
/// Chebyshev coefficients:
///   a~^(1) = ((-1)^n / 2n^2) sum_{s=2}^{n} c^(s)/(s-1),
///   a~^(s) = ((-1)^{n+1} / 2n^2) c^(s)/(s-1)             (s >= 2),
///   b~^(0) = 1 - sum_{s=1}^{n} a~^(s)/s,
///   b~^(1) = a~^(1) - 1,  b~^(s) = a~^(s)/s              (s >= 2).
/// Returns (a~ indexed s-1 for s = 1..n, b~ indexed s for s = 0..n).
inline std::pair<std::vector<double>, std::vector<double>>
flexible_coefficients(int n) {
    if (n < 2 || n > 15) throw argument_error("flexible order must lie in [2, 15]");
    const auto c = chebyshev_integer_coefficients(n);
    const double scale = 1.0 / (2.0 * static_cast<double>(n) * static_cast<double>(n));
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n

    std::vector<double> fa(static_cast<std::size_t>(n));
    std::vector<std::pair<long long, long long>> head_terms;   // c^(s)/(s-1)
    std::vector<std::pair<long long, long long>> inner_terms;  // c^(s)/(s(s-1))
    for (int s = 2; s <= n; ++s) {
        head_terms.emplace_back(c[static_cast<std::size_t>(s - 1)],
                                static_cast<long long>(s - 1));
        inner_terms.emplace_back(c[static_cast<std::size_t>(s - 1)],
                                 static_cast<long long>(s) * (s - 1));
        fa[static_cast<std::size_t>(s - 1)] =
            -sign_n * scale * static_cast<double>(c[static_cast<std::size_t>(s - 1)]) /
            static_cast<double>(s - 1);
    }
    fa[0] = sign_n * scale * detail::exact_fraction_sum(head_terms);

    // sum_s a~^(s)/s = a~^(1) - sign_n * scale * sum_{s>=2} c^(s)/(s(s-1))
    const double flex_sum = fa[0] - sign_n * scale * detail::exact_fraction_sum(inner_terms);

    std::vector<double> fb(static_cast<std::size_t>(n) + 1);
    fb[0] = 1.0 - flex_sum;
    fb[1] = fa[0] - 1.0;
    for (int s = 2; s <= n; ++s)
        fb[static_cast<std::size_t>(s)] =
            fa[static_cast<std::size_t>(s - 1)] / static_cast<double>(s);
    return {std::move(fa), std::move(fb)};
}

/// All five families at one order, as printed by the coeffs subcommand.
struct CoefficientTable {
    int order = 0;
    std::vector<double> taylor_a;  // s = 1..order
    std::vector<double> taylor_b;  // s = 1..order
    std::vector<double> cheb_c;    // s = 1..order
    std::vector<double> flex_a;    // s = 1..order
    std::vector<double> flex_b;    // s = 0..order
};

inline CoefficientTable make_coefficient_table(int order) {
    if (order < 2 || order > 15)
        throw argument_error("coefficient table order must lie in [2, 15]");
    CoefficientTable table;
    table.order = order;
    std::tie(table.taylor_a, table.taylor_b) = taylor_coefficients(order);
    table.cheb_c = chebyshev_coefficients(order);
    std::tie(table.flex_a, table.flex_b) = flexible_coefficients(order);
    return table;
}

} // namespace cohbounds
