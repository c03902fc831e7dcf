// Command-line surface for the coherence-bounds library: design
// certification, coefficient tables, lambda sweeps as CSV, and the
// randomized verification harness.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohbounds/cohbounds.hpp"

namespace {

using namespace cohbounds;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string fmt(double value, int digits = 15) {
    return detail::format_significant(value, digits);
}

struct DesignSource {
    std::string builtin;
    std::string file;
    std::string partition;  // path, "none", or empty (keep as declared)
};

void add_design_flags(CLI::App* cmd, DesignSource& src) {
    auto* builtin = cmd->add_option("--builtin", src.builtin,
                                    "builtin design: octahedron, icosahedron, icosidodecahedron");
    auto* file = cmd->add_option("--file", src.file, "design JSON file");
    builtin->excludes(file);
    cmd->add_option("--partition", src.partition,
                    "partition JSON file with index groups, or 'none' to force the single POVM");
}

QuantumDesign resolve_design(const DesignSource& src, bool certify) {
    if (src.builtin.empty() == src.file.empty())
        throw argument_error("exactly one of --builtin and --file is required");
    QuantumDesign design = [&] {
        if (!src.builtin.empty())
            return builtin_design(builtin_design_from_name(src.builtin));
        return certify ? load_design(src.file) : load_design_raw(src.file);
    }();
    if (src.partition == "none") return design.without_partition();
    if (!src.partition.empty()) return design.with_partition(load_partition(src.partition));
    return design;
}

std::array<double, 3> parse_direction(const std::string& text) {
    std::array<double, 3> n{};
    std::istringstream is(text);
    char comma1 = 0, comma2 = 0;
    if (!(is >> n[0] >> comma1 >> n[1] >> comma2 >> n[2]) || comma1 != ',' || comma2 != ',')
        throw argument_error("direction must be given as x,y,z");
    const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (std::abs(norm - 1.0) > 1e-9)
        throw argument_error("direction must be a unit vector (norm " + fmt(norm, 6) + ")");
    for (double& c : n) c /= norm;
    return n;
}

int run_validate(const DesignSource& src) {
    const QuantumDesign design = resolve_design(src, /*certify=*/false);
    const ValidationReport report = validate_design(design);
    std::cout << "dim=" << report.dim << " strength=" << report.strength
              << " vectors=" << report.size << '\n';
    for (std::size_t i = 0; i < report.frame_potentials.size(); ++i) {
        const double dev = std::abs(report.frame_potentials[i] - report.targets[i]);
        std::cout << "s=" << (i + 1) << " frame_potential=" << fmt(report.frame_potentials[i])
                  << " target=" << fmt(report.targets[i]) << " deviation=" << fmt(dev, 3)
                  << (dev > kFramePotentialTol ? " status=fail" : " status=ok") << '\n';
    }
    std::cout << "completeness_residual=" << fmt(report.completeness_residual, 3) << '\n';

    bool partition_ok = true;
    if (design.partition()) {
        double worst = 0.0;
        const auto& groups = *design.partition();
        for (std::size_t m = 0; m < groups.size(); ++m) {
            std::vector<Vector> vecs;
            for (int idx : groups[m])
                vecs.push_back(design.vectors()[static_cast<std::size_t>(idx)]);
            worst = std::max(worst, DesignPovm(design.dim(), vecs).completeness_residual());
        }
        partition_ok = worst <= kCompletenessTol;
        std::cout << "partition_groups=" << groups.size()
                  << " partition_max_residual=" << fmt(worst, 3) << '\n';
    }

    const bool passed = report.passed && partition_ok;
    if (!passed) {
        std::string reason;
        for (int s : report.failed_orders())
            reason += (reason.empty() ? "frame_potential_s=" : ",") + std::to_string(s);
        if (report.completeness_residual > kCompletenessTol)
            reason += (reason.empty() ? "" : " ") + std::string("completeness");
        if (!partition_ok) reason += (reason.empty() ? "" : " ") + std::string("partition");
        std::cout << "result=fail reason=" << reason << '\n';
        return kExitVerificationFailure;
    }
    std::cout << "result=pass\n";
    return kExitPass;
}

int run_sweep_cmd(const DesignSource& src, int grid, const std::string& out_path,
                  const std::optional<std::string>& axis_text,
                  const std::optional<std::string>& alt_text) {
    const QuantumDesign design = resolve_design(src, /*certify=*/true);
    OrientationPair orient{{0, 0, 1}, {1, 0, 0}};
    if (!src.builtin.empty())
        orient = default_orientations(builtin_design_from_name(src.builtin));
    if (axis_text) orient.axis = parse_direction(*axis_text);
    if (alt_text) orient.alt = parse_direction(*alt_text);

    const SweepResult sweep = run_sweep(design, orient, grid);
    write_sweep_csv(sweep, out_path);
    std::cout << "rows=" << sweep.rows.size() << '\n';
    std::cout << "crossover_lambda="
              << (sweep.crossover_lambda ? fmt(*sweep.crossover_lambda) : "none") << '\n';
    std::cout << "out=" << out_path << '\n';
    return kExitPass;
}

int run_check_cmd(const DesignSource& src, int samples, std::uint64_t seed) {
    const QuantumDesign design = resolve_design(src, /*certify=*/true);
    const CheckReport report = run_check(design, samples, seed);
    std::cout << "samples=" << report.samples << " seed=" << seed << '\n';
    std::cout << "worst_sandwich_slack=" << fmt(report.worst_sandwich_slack) << '\n';
    std::cout << "worst_cap_slack=" << fmt(report.worst_cap_slack) << '\n';
    std::cout << "worst_moment_residual=" << fmt(report.worst_moment_residual) << '\n';
    std::cout << "min_envelope_gap=" << fmt(report.min_envelope_gap) << '\n';
    if (!report.passed()) {
        for (const std::string& v : report.violations)
            std::cout << "violation " << v << '\n';
        std::cout << "result=fail\n";
        return kExitVerificationFailure;
    }
    std::cout << "result=pass\n";
    return kExitPass;
}

int run_coeffs(int order) {
    const CoefficientTable table = make_coefficient_table(order);
    std::cout << "order=" << table.order << '\n';
    std::cout << "s taylor_a taylor_b cheb_c flex_a flex_b\n";
    std::cout << "0 - - - - " << fmt(table.flex_b[0], 12) << '\n';
    for (int s = 1; s <= table.order; ++s) {
        const auto i = static_cast<std::size_t>(s - 1);
        std::cout << s << ' ' << fmt(table.taylor_a[i], 12) << ' ' << fmt(table.taylor_b[i], 12)
                  << ' ' << fmt(table.cheb_c[i], 12) << ' ' << fmt(table.flex_a[i], 12) << ' '
                  << fmt(table.flex_b[i + 1], 12) << '\n';
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-sided coherence estimates for design-structured POVMs"};
    app.require_subcommand(1);

    DesignSource validate_src;
    auto* validate_cmd = app.add_subcommand("validate", "certify a design's frame potentials");
    add_design_flags(validate_cmd, validate_src);

    DesignSource sweep_src;
    int grid = 201;
    std::string out_path;
    std::optional<std::string> axis_text, alt_text;
    auto* sweep_cmd = app.add_subcommand("sweep", "write estimate curves over lambda as CSV");
    add_design_flags(sweep_cmd, sweep_src);
    sweep_cmd->add_option("--grid", grid, "number of lambda grid points")->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "output CSV path")->required();
    sweep_cmd->add_option("--axis", axis_text, "override axis orientation, x,y,z");
    sweep_cmd->add_option("--alt", alt_text, "override second orientation, x,y,z");

    DesignSource check_src;
    int samples = 10000;
    std::uint64_t seed = 1;
    auto* check_cmd = app.add_subcommand("check", "randomized verification of the estimates");
    add_design_flags(check_cmd, check_src);
    check_cmd->add_option("--samples", samples, "number of random states")->capture_default_str();
    check_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();

    int order = 0;
    auto* coeffs_cmd = app.add_subcommand("coeffs", "print the coefficient families");
    coeffs_cmd->add_option("order", order, "expansion order, 2..15")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (validate_cmd->parsed()) return run_validate(validate_src);
        if (sweep_cmd->parsed()) return run_sweep_cmd(sweep_src, grid, out_path, axis_text, alt_text);
        if (check_cmd->parsed()) return run_check_cmd(check_src, samples, seed);
        if (coeffs_cmd->parsed()) return run_coeffs(order);
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const schema_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const error& e) {
        // validation, partition, and state violations are verification failures
        std::cerr << "verification failure: " << e.what() << '\n';
        return kExitVerificationFailure;
    }
    return kExitUsage;
}
