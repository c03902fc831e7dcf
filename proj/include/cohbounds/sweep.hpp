#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "cohbounds/bounds.hpp"
#include "cohbounds/design.hpp"
#include "cohbounds/errors.hpp"
#include "cohbounds/state.hpp"

namespace cohbounds {

namespace detail {

inline std::string format_significant(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

} // namespace detail

/// One grid point of a lambda sweep: the four estimates, the exact
/// coherence for the two reference Bloch orientations, and the
/// probability cap.
struct SweepRow {
    double lambda = 0.0;
    double lower_taylor = 0.0;
    double upper_taylor = 0.0;
    double lower_cheb = 0.0;
    double upper_cheb = 0.0;
    double coherence_axis = 0.0;
    double coherence_alt = 0.0;
    double upsilon = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    // Interpolated lambda where the better lower estimate switches from
    // the Chebyshev branch to the Taylor branch, when a switch occurs.
    std::optional<double> crossover_lambda;
};

/// The two reference orientations used for the exact-coherence traces:
/// a symmetry axis of the polyhedron and a second direction fixed by its
/// geometry (bisector or equatorial vertex).
struct OrientationPair {
    std::array<double, 3> axis;
    std::array<double, 3> alt;
};

inline OrientationPair default_orientations(BuiltinDesign which) {
    const double phi = detail::kGoldenRatio;
    const double r = std::sqrt(1.0 + phi * phi);
    switch (which) {
        case BuiltinDesign::octahedron:
            // Coordinate axis through two vertices; quadrant bisector in
            // the xy coordinate plane.
            return {{0, 0, 1}, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0}};
        case BuiltinDesign::icosahedron:
            // Vertex axis; second direction orthogonal to it in the plane
            // of an inclined edge.
            return {{0, 1.0 / r, phi / r}, {0, -phi / r, 1.0 / r}};
        case BuiltinDesign::icosidodecahedron:
            // Pentagon-face axis; (0, 1, 0) is one of the ten equatorial
            // vertices orthogonal to it.
            return {{1.0 / r, 0, phi / r}, {0, 1, 0}};
    }
    throw argument_error("unknown builtin design");
}

/// Sweeps the minimal eigenvalue over [0, 1/2] on a uniform grid and
/// evaluates the estimates of the bounds report per point. Every row is
/// re-validated against both exact-coherence traces before it is
/// accepted; a violating row aborts the sweep.
inline SweepResult run_sweep(const QuantumDesign& design, const OrientationPair& orient,
                             int grid) {
    if (design.dim() != 2)
        throw argument_error("lambda sweeps are defined for qubit designs only");
    if (grid < 2) throw argument_error("sweep grid needs at least 2 points");

    const std::vector<DesignPovm> povms = assign_povms(design);
    const DesignMeta meta{design.size(), design.strength()};

    SweepResult result;
    result.rows.reserve(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        const double lambda = 0.5 * static_cast<double>(i) / static_cast<double>(grid - 1);
        const DensityMatrix rho_axis = qubit_from_bloch(BlochSpec(lambda, orient.axis));
        const DensityMatrix rho_alt = qubit_from_bloch(BlochSpec(lambda, orient.alt));

        const BoundsReport report = evaluate_bounds(povms, meta, rho_axis);
        const double exact_alt = average_coherence(povms, rho_alt);

        SweepRow row;
        row.lambda = lambda;
        row.lower_taylor = report.lower_taylor;
        row.upper_taylor = report.upper_taylor;
        row.lower_cheb = report.lower_cheb;
        row.upper_cheb = report.upper_cheb;
        row.coherence_axis = report.exact_coherence;
        row.coherence_alt = exact_alt;
        row.upsilon = report.upsilon;

        const double lower = std::max(row.lower_taylor, row.lower_cheb);
        const double upper = std::min(row.upper_taylor, row.upper_cheb);
        for (double exact : {row.coherence_axis, row.coherence_alt})
            if (exact < lower - 1e-9 || exact > upper + 1e-9)
                throw error("sweep row at lambda " + std::to_string(lambda) +
                            " violates the two-sided estimates");
        result.rows.push_back(row);
    }

    // The estimates collapse onto the exact value at the maximally mixed
    // endpoint; anything else indicates a broken evaluation.
    const SweepRow& last = result.rows.back();
    for (double est : {last.lower_taylor, last.upper_taylor, last.lower_cheb, last.upper_cheb})
        if (std::abs(est - last.coherence_axis) > 1e-6)
            throw error("estimates fail to converge at lambda = 1/2");

    for (std::size_t i = 0; i + 1 < result.rows.size(); ++i) {
        const double a = result.rows[i].lower_taylor - result.rows[i].lower_cheb;
        const double b = result.rows[i + 1].lower_taylor - result.rows[i + 1].lower_cheb;
        if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
            const double frac = a / (a - b);
            result.crossover_lambda =
                result.rows[i].lambda +
                frac * (result.rows[i + 1].lambda - result.rows[i].lambda);
            break;
        }
    }
    return result;
}

inline constexpr const char* kSweepCsvHeader =
    "lambda,lower_taylor,upper_taylor,lower_cheb,upper_cheb,"
    "coherence_axis,coherence_alt,upsilon";

inline void write_sweep_csv(const SweepResult& sweep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << kSweepCsvHeader << '\n';
    for (const SweepRow& row : sweep.rows) {
        out << detail::format_significant(row.lambda, 15) << ','
            << detail::format_significant(row.lower_taylor, 15) << ','
            << detail::format_significant(row.upper_taylor, 15) << ','
            << detail::format_significant(row.lower_cheb, 15) << ','
            << detail::format_significant(row.upper_cheb, 15) << ','
            << detail::format_significant(row.coherence_axis, 15) << ','
            << detail::format_significant(row.coherence_alt, 15) << ','
            << detail::format_significant(row.upsilon, 15) << '\n';
    }
    if (!out) throw io_error("failed writing '" + path + "'");
}

} // namespace cohbounds
