#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "cohbounds/bounds.hpp"
#include "cohbounds/coherence.hpp"
#include "cohbounds/design.hpp"
#include "cohbounds/random.hpp"

using namespace cohbounds;
using Catch::Matchers::WithinAbs;

namespace {

const double kLn2 = std::log(2.0);
const double kLn3 = std::log(3.0);
const double kLn6 = std::log(6.0);

DensityMatrix north_pure() { return qubit_from_bloch(BlochSpec(0.0, {0.0, 0.0, 1.0})); }

} // namespace

TEST_CASE("outcome probabilities of the octahedron POVM") {
    const auto octa = builtin_design(BuiltinDesign::octahedron);
    const auto povm = assign_povms(octa).front();

    const auto uniform = outcome_probabilities(povm, DensityMatrix::maximally_mixed(2));
    for (double p : uniform.probabilities) REQUIRE_THAT(p, WithinAbs(1.0 / 6.0, 1e-14));

    auto peaked = outcome_probabilities(povm, north_pure()).probabilities;
    std::sort(peaked.begin(), peaked.end());
    const std::vector<double> expected{0.0, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 3};
    for (std::size_t i = 0; i < expected.size(); ++i)
        REQUIRE_THAT(peaked[i], WithinAbs(expected[i], 1e-14));
}

TEST_CASE("projective pair measures its eigenstate sharply") {
    const auto octa = builtin_design(BuiltinDesign::octahedron)
                          .with_partition({{0, 1}, {2, 3}, {4, 5}});
    const auto z_pair = assign_povms(octa)[2];  // vertices +z, -z
    const auto dist = outcome_probabilities(z_pair, north_pure());
    REQUIRE_THAT(dist.probabilities[0], WithinAbs(1.0, 1e-14));
    REQUIRE_THAT(dist.probabilities[1], WithinAbs(0.0, 1e-14));
}

TEST_CASE("dimension mismatch is rejected") {
    const auto povm = assign_povms(builtin_design(BuiltinDesign::octahedron)).front();
    REQUIRE_THROWS_AS(outcome_probabilities(povm, DensityMatrix::maximally_mixed(3)),
                      argument_error);
}

TEST_CASE("Shannon entropy of outcome distributions") {
    REQUIRE_THAT(shannon_entropy({{1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}}),
                 WithinAbs(kLn6, 1e-14));
    REQUIRE_THAT(shannon_entropy({{1.0, 0.0}}), WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(shannon_entropy({{1.0 / 3, 0.0, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}}),
                 WithinAbs(kLn3 / 3.0 + 2.0 * kLn6 / 3.0, 1e-14));
    REQUIRE_THAT(shannon_entropy({{1.0 / 3, 0.0, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6}}),
                 WithinAbs(1.560710, 1e-6));
}

TEST_CASE("relative entropy of coherence for the octahedron POVM") {
    const auto povm = assign_povms(builtin_design(BuiltinDesign::octahedron)).front();
    REQUIRE_THAT(coherence(povm, DensityMatrix::maximally_mixed(2)), WithinAbs(kLn3, 1e-14));
    REQUIRE_THAT(coherence(povm, north_pure()), WithinAbs(1.560710, 1e-6));
}

TEST_CASE("eigenbasis measurement of a pure state carries no coherence") {
    const auto octa = builtin_design(BuiltinDesign::octahedron)
                          .with_partition({{0, 1}, {2, 3}, {4, 5}});
    const auto z_pair = assign_povms(octa)[2];
    REQUIRE_THAT(coherence(z_pair, north_pure()), WithinAbs(0.0, 1e-12));
}

TEST_CASE("averaged coherence over the three-basis partition") {
    const auto octa = builtin_design(BuiltinDesign::octahedron)
                          .with_partition({{0, 1}, {2, 3}, {4, 5}});
    const auto povms = assign_povms(octa);

    const auto single = assign_povms(builtin_design(BuiltinDesign::octahedron));
    const auto rho = qubit_from_bloch(BlochSpec(0.3, {0.0, 1.0, 0.0}));
    REQUIRE_THAT(average_coherence(single, rho), WithinAbs(coherence(single.front(), rho), 1e-15));

    REQUIRE_THAT(average_coherence(povms, DensityMatrix::maximally_mixed(2)),
                 WithinAbs(0.0, 1e-12));
    // z basis contributes 0, x and y bases ln 2 each
    REQUIRE_THAT(average_coherence(povms, north_pure()), WithinAbs(2.0 * kLn2 / 3.0, 1e-12));
    REQUIRE_THAT(average_coherence(povms, north_pure()), WithinAbs(0.462098, 1e-6));

    REQUIRE_THROWS_AS(average_coherence({}, north_pure()), argument_error);
}

TEST_CASE("average coherence is permutation invariant") {
    const auto octa = builtin_design(BuiltinDesign::octahedron)
                          .with_partition({{0, 1}, {2, 3}, {4, 5}});
    auto povms = assign_povms(octa);
    StateSampler sampler(31);
    const auto rho = sampler.random_state(2);
    const double reference = average_coherence(povms, rho);
    std::mt19937 shuffler(7);
    for (int rep = 0; rep < 4; ++rep) {
        std::shuffle(povms.begin(), povms.end(), shuffler);
        REQUIRE_THAT(average_coherence(povms, rho), WithinAbs(reference, 1e-14));
    }
}

TEST_CASE("power sums of the statistics match the design moments") {
    StateSampler sampler(421);
    for (auto which : {BuiltinDesign::octahedron, BuiltinDesign::icosahedron,
                       BuiltinDesign::icosidodecahedron}) {
        const auto design = builtin_design(which);
        const auto povm = assign_povms(design).front();
        const int K = design.size();
        for (int rep = 0; rep < 50; ++rep) {
            const auto rho = sampler.random_state(2);
            const auto dist = outcome_probabilities(povm, rho);
            for (int s = 2; s <= design.strength(); ++s) {
                double lhs = 0.0;
                for (double p : dist.probabilities) lhs += std::pow(p, s);
                const double rhs = std::pow(static_cast<double>(K), 1 - s) *
                                   std::pow(2.0, s) * dimension_factor(2, s) *
                                   symmetric_moment(rho, s);
                REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-9));
            }
        }
    }
}

TEST_CASE("partitioned statistics satisfy the combined moment identity") {
    const auto octa = builtin_design(BuiltinDesign::octahedron)
                          .with_partition({{0, 1}, {2, 3}, {4, 5}});
    const auto povms = assign_povms(octa);
    const int K = octa.size();
    const int ell = povms.front().size();
    StateSampler sampler(97);
    for (int rep = 0; rep < 50; ++rep) {
        const auto rho = sampler.random_state(2);
        for (int s = 2; s <= octa.strength(); ++s) {
            double lhs = 0.0;
            for (const auto& povm : povms)
                for (double p : outcome_probabilities(povm, rho).probabilities)
                    lhs += std::pow(p, s);
            const double rhs = static_cast<double>(K) *
                               std::pow(static_cast<double>(ell), -s) * std::pow(2.0, s) *
                               dimension_factor(2, s) * symmetric_moment(rho, s);
            REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-9));
        }
    }
}

TEST_CASE("every outcome probability stays below the certified cap") {
    StateSampler sampler(1234);
    for (auto which : {BuiltinDesign::octahedron, BuiltinDesign::icosahedron,
                       BuiltinDesign::icosidodecahedron}) {
        const auto design = builtin_design(which);
        const auto povm = assign_povms(design).front();
        const int K = design.size();
        const int t = design.strength();
        for (int rep = 0; rep < 200; ++rep) {
            const auto rho = qubit_from_bloch(sampler.qubit_spec());
            const double beta_t = std::pow(static_cast<double>(K), 1 - t) *
                                  std::pow(2.0, t) * dimension_factor(2, t) *
                                  symmetric_moment(rho, t);
            const double cap = upsilon_root(K, t, beta_t);
            for (double p : outcome_probabilities(povm, rho).probabilities)
                REQUIRE(p <= cap + 1e-9);
        }
    }
}

TEST_CASE("coherence is covariant under a joint rotation") {
    StateSampler sampler(64);
    const auto octa = builtin_design(BuiltinDesign::octahedron);
    for (int rep = 0; rep < 5; ++rep) {
        const Matrix u = sampler.haar_unitary(2);
        std::vector<Vector> rotated;
        for (const auto& v : octa.vectors()) rotated.push_back(u * v);
        const DesignPovm original(2, octa.vectors());
        const DesignPovm conjugated(2, rotated);

        const auto rho = sampler.random_state(2);
        Matrix m = u * rho.matrix() * u.adjoint();
        m = Complex(0.5, 0.0) * (m + m.adjoint().eval());
        const DensityMatrix rho_rotated{std::move(m)};

        REQUIRE_THAT(coherence(conjugated, rho_rotated),
                     WithinAbs(coherence(original, rho), 1e-10));
    }
}

TEST_CASE("design-POVM coherence is empirically nonnegative") {
    StateSampler sampler(555);
    for (auto which : {BuiltinDesign::octahedron, BuiltinDesign::icosahedron}) {
        const auto povm = assign_povms(builtin_design(which)).front();
        for (int rep = 0; rep < 100; ++rep)
            REQUIRE(coherence(povm, qubit_from_bloch(sampler.qubit_spec())) >= -1e-10);
    }
}
