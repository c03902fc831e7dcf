#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cohbounds/errors.hpp"
#include "cohbounds/state.hpp"

namespace cohbounds {

inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kFramePotentialTol = 1e-9;
inline constexpr double kCompletenessTol = 1e-10;

/// Exact binomial coefficient; valid while the result fits in 64 bits.
inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<unsigned>(n - k + i);
        r /= static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(r);
}

/// D_d^(t) = 1 / C(d+t-1, t), the inverse dimension of the symmetric
/// subspace of t copies.
inline double dimension_factor(int d, int t) {
    if (d < 2) throw argument_error("dimension_factor requires d >= 2");
    if (t < 1) throw argument_error("dimension_factor requires t >= 1");
    if (d + t > 64) throw argument_error("dimension_factor limited to d + t <= 64");
    return 1.0 / static_cast<double>(binomial(d + t - 1, t));
}

/// K unit vectors together with a declared design strength t and an
/// optional partition into M groups of equal size l (K = l M). Unit norms
/// and partition shape are enforced here; the frame-potential condition is
/// certified separately by validate_design.
class QuantumDesign {
public:
    QuantumDesign(int dim, int strength, std::vector<Vector> vectors,
                  std::optional<std::vector<std::vector<int>>> partition = std::nullopt)
        : dim_(dim), strength_(strength), vectors_(std::move(vectors)),
          partition_(std::move(partition)) {
        if (dim_ < 2) throw argument_error("design dimension must be at least 2");
        if (strength_ < 1) throw argument_error("design strength must be at least 1");
        if (vectors_.empty()) throw argument_error("design must contain vectors");
        for (const auto& v : vectors_) {
            if (v.size() != dim_)
                throw argument_error("design vector has wrong dimension");
            if (std::abs(v.norm() - 1.0) > kUnitNormTol)
                throw invalid_state_error("design vector is not unit-norm");
        }
        if (partition_) validate_partition_shape(*partition_);
    }

    int dim() const { return dim_; }
    int strength() const { return strength_; }
    int size() const { return static_cast<int>(vectors_.size()); }
    const std::vector<Vector>& vectors() const { return vectors_; }
    const std::optional<std::vector<std::vector<int>>>& partition() const { return partition_; }

    QuantumDesign with_partition(std::vector<std::vector<int>> partition) const {
        return QuantumDesign(dim_, strength_, vectors_, std::move(partition));
    }
    QuantumDesign without_partition() const {
        return QuantumDesign(dim_, strength_, vectors_);
    }
    QuantumDesign with_strength(int strength) const {
        return QuantumDesign(dim_, strength, vectors_, partition_);
    }

private:
    void validate_partition_shape(const std::vector<std::vector<int>>& groups) const {
        const int K = size();
        if (groups.empty()) throw argument_error("partition must contain groups");
        const std::size_t ell = groups.front().size();
        std::vector<char> seen(static_cast<std::size_t>(K), 0);
        for (const auto& g : groups) {
            if (g.size() != ell)
                throw argument_error("partition groups must have equal size");
            for (int idx : g) {
                if (idx < 0 || idx >= K)
                    throw argument_error("partition index out of range");
                if (seen[static_cast<std::size_t>(idx)])
                    throw argument_error("partition groups must be disjoint");
                seen[static_cast<std::size_t>(idx)] = 1;
            }
        }
        if (ell * groups.size() != static_cast<std::size_t>(K))
            throw argument_error("partition must cover all design vectors");
    }

    int dim_;
    int strength_;
    std::vector<Vector> vectors_;
    std::optional<std::vector<std::vector<int>>> partition_;
};

/// A rank-one POVM with l effects (d/l) |phi_j><phi_j| drawn from a design.
class DesignPovm {
public:
    DesignPovm(int dim, std::vector<Vector> vectors)
        : dim_(dim), vectors_(std::move(vectors)) {
        if (vectors_.empty()) throw argument_error("POVM must contain effects");
        weight_ = static_cast<double>(dim_) / static_cast<double>(vectors_.size());
    }

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(vectors_.size()); }
    double weight() const { return weight_; }
    const std::vector<Vector>& vectors() const { return vectors_; }

    /// Max-norm residual of sum_j (d/l) |phi_j><phi_j| - I.
    double completeness_residual() const {
        Matrix acc = Matrix::Zero(dim_, dim_);
        for (const auto& v : vectors_) acc += weight_ * (v * v.adjoint());
        acc -= Matrix::Identity(dim_, dim_);
        return acc.cwiseAbs().maxCoeff();
    }

private:
    int dim_;
    double weight_;
    std::vector<Vector> vectors_;
};

/// Frame potential (1/K^2) sum_{j,k} |<phi_j|phi_k>|^{2s}.
inline double frame_potential(const QuantumDesign& design, int s) {
    if (s < 1) throw argument_error("frame-potential order must be at least 1");
    const auto& vecs = design.vectors();
    const std::size_t K = vecs.size();
    double acc = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        acc += 1.0;  // diagonal term, |<phi_j|phi_j>|^{2s} = 1
        for (std::size_t k = j + 1; k < K; ++k) {
            const double overlap_sq = std::norm(vecs[j].dot(vecs[k]));
            acc += 2.0 * std::pow(overlap_sq, s);
        }
    }
    const double value = acc / (static_cast<double>(K) * static_cast<double>(K));
    // Welch bound: the potential can never fall below D_d^(s). A value
    // clearly below it signals corrupted inputs rather than a non-design.
    if (value < dimension_factor(design.dim(), s) - 1e-10)
        throw error("frame potential below the Welch bound; inconsistent inputs");
    return value;
}

struct ValidationReport {
    int dim = 0;
    int strength = 0;
    int size = 0;
    std::vector<double> frame_potentials;  // index s-1 holds the s-th potential
    std::vector<double> targets;           // D_d^(s)
    double max_deviation = 0.0;
    double completeness_residual = 0.0;
    bool passed = false;

    /// 1-based orders s whose potential deviates beyond tolerance.
    std::vector<int> failed_orders() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < frame_potentials.size(); ++i)
            if (std::abs(frame_potentials[i] - targets[i]) > kFramePotentialTol)
                out.push_back(static_cast<int>(i) + 1);
        return out;
    }
};

/// Checks the frame-potential condition for every s = 1..t and the
/// resolution of the identity built from the complete vector set. Returns
/// a failed report rather than throwing when a check exceeds tolerance.
inline ValidationReport validate_design(const QuantumDesign& design) {
    ValidationReport report;
    report.dim = design.dim();
    report.strength = design.strength();
    report.size = design.size();
    for (int s = 1; s <= design.strength(); ++s) {
        report.frame_potentials.push_back(frame_potential(design, s));
        report.targets.push_back(dimension_factor(design.dim(), s));
        report.max_deviation = std::max(
            report.max_deviation,
            std::abs(report.frame_potentials.back() - report.targets.back()));
    }
    report.completeness_residual =
        DesignPovm(design.dim(), design.vectors()).completeness_residual();
    report.passed = report.max_deviation <= kFramePotentialTol &&
                    report.completeness_residual <= kCompletenessTol;
    return report;
}

enum class BuiltinDesign { octahedron, icosahedron, icosidodecahedron };

inline const char* builtin_design_name(BuiltinDesign which) {
    switch (which) {
        case BuiltinDesign::octahedron: return "octahedron";
        case BuiltinDesign::icosahedron: return "icosahedron";
        case BuiltinDesign::icosidodecahedron: return "icosidodecahedron";
    }
    throw argument_error("unknown builtin design");
}

inline BuiltinDesign builtin_design_from_name(const std::string& name) {
    if (name == "octahedron") return BuiltinDesign::octahedron;
    if (name == "icosahedron") return BuiltinDesign::icosahedron;
    if (name == "icosidodecahedron") return BuiltinDesign::icosidodecahedron;
    throw argument_error("unknown builtin design '" + name + "'");
}

/// Spinor for the Bloch direction (sin t cos p, sin t sin p, cos t):
/// (cos(t/2), e^{ip} sin(t/2)). The global phase is irrelevant downstream.
inline Vector bloch_to_spinor(const std::array<double, 3>& n) {
    const double z = std::clamp(n[2], -1.0, 1.0);
    const double theta = std::acos(z);
    const double phi = std::atan2(n[1], n[0]);
    Vector v(2);
    v[0] = Complex(std::cos(theta / 2.0), 0.0);
    v[1] = std::polar(std::sin(theta / 2.0), phi);
    return v;
}

namespace detail {

inline constexpr double kGoldenRatio = 1.6180339887498948482;

inline std::array<double, 3> normalized(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    return {x / n, y / n, z / n};
}

inline std::vector<std::array<double, 3>> octahedron_bloch() {
    return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

// Cyclic permutations of (0, +-1, +-phi), normalized.
inline std::vector<std::array<double, 3>> icosahedron_bloch() {
    const double phi = kGoldenRatio;
    std::vector<std::array<double, 3>> out;
    for (double a : {1.0, -1.0})
        for (double b : {phi, -phi}) {
            out.push_back(normalized(0, a, b));
            out.push_back(normalized(b, 0, a));
            out.push_back(normalized(a, b, 0));
        }
    return out;
}

// Cyclic permutations of (0, 0, +-1) and of (+-1, +-phi, +-phi^2)/2,
// normalized.
inline std::vector<std::array<double, 3>> icosidodecahedron_bloch() {
    const double phi = kGoldenRatio;
    std::vector<std::array<double, 3>> out;
    for (double c : {1.0, -1.0}) {
        out.push_back({0, 0, c});
        out.push_back({c, 0, 0});
        out.push_back({0, c, 0});
    }
    for (double a : {1.0, -1.0})
        for (double b : {phi, -phi})
            for (double c : {phi * phi, -phi * phi}) {
                out.push_back(normalized(a, b, c));
                out.push_back(normalized(c, a, b));
                out.push_back(normalized(b, c, a));
            }
    return out;
}

} // namespace detail

/// The bundled qubit designs: octahedron (K=6, t=3), icosahedron
/// (K=12, t=5), icosidodecahedron (K=30, t=5). Vertex coordinates follow
/// the standard polyhedron conventions and are certified at runtime so a
/// coordinate slip cannot pass silently.
inline QuantumDesign builtin_design(BuiltinDesign which) {
    std::vector<std::array<double, 3>> bloch;
    int strength = 0;
    switch (which) {
        case BuiltinDesign::octahedron:
            bloch = detail::octahedron_bloch();
            strength = 3;
            break;
        case BuiltinDesign::icosahedron:
            bloch = detail::icosahedron_bloch();
            strength = 5;
            break;
        case BuiltinDesign::icosidodecahedron:
            bloch = detail::icosidodecahedron_bloch();
            strength = 5;
            break;
    }
    std::vector<Vector> vectors;
    vectors.reserve(bloch.size());
    for (const auto& n : bloch) vectors.push_back(bloch_to_spinor(n));
    QuantumDesign design(2, strength, std::move(vectors));
    const ValidationReport report = validate_design(design);
    if (!report.passed)
        throw validation_error(std::string("builtin design '") +
                               builtin_design_name(which) +
                               "' failed certification");
    return design;
}

/// Builds the rank-one POVMs assigned to the design: one POVM over the
/// full vector set when no partition is declared, otherwise one POVM per
/// partition group. Each group must resolve the identity on its own.
inline std::vector<DesignPovm> assign_povms(const QuantumDesign& design) {
    std::vector<DesignPovm> povms;
    if (!design.partition()) {
        povms.emplace_back(design.dim(), design.vectors());
    } else {
        const auto& groups = *design.partition();
        povms.reserve(groups.size());
        for (std::size_t m = 0; m < groups.size(); ++m) {
            std::vector<Vector> vecs;
            vecs.reserve(groups[m].size());
            for (int idx : groups[m]) vecs.push_back(design.vectors()[static_cast<std::size_t>(idx)]);
            DesignPovm povm(design.dim(), std::move(vecs));
            const double residual = povm.completeness_residual();
            if (residual > kCompletenessTol)
                throw partition_error("partition group " + std::to_string(m) +
                                      " does not resolve the identity (residual " +
                                      std::to_string(residual) + ")");
            povms.push_back(std::move(povm));
        }
        return povms;
    }
    const double residual = povms.front().completeness_residual();
    if (residual > kCompletenessTol)
        throw partition_error("full vector set does not resolve the identity (residual " +
                              std::to_string(residual) + ")");
    return povms;
}

} // namespace cohbounds
