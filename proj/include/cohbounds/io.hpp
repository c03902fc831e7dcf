#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohbounds/design.hpp"
#include "cohbounds/errors.hpp"
#include "cohbounds/state.hpp"

namespace cohbounds {

namespace detail {

inline nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open '" + path + "' for reading");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw schema_error("malformed JSON in '" + path + "': " + e.what());
    }
}

inline void write_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out) throw io_error("failed writing '" + path + "'");
}

} // namespace detail

/// Density-matrix file: { "dim": d, "re": [[...]], "im": [[...]] }, row-major.
inline DensityMatrix load_density_matrix(const std::string& path) {
    const nlohmann::json j = detail::parse_file(path);
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw schema_error("density-matrix file needs fields dim, re, im");
    if (!j["dim"].is_number_integer())
        throw schema_error("density-matrix dim must be an integer");
    const int d = j["dim"].get<int>();
    if (d < 1) throw schema_error("density-matrix dim must be positive");
    const auto& re = j["re"];
    const auto& im = j["im"];
    if (!re.is_array() || !im.is_array() ||
        re.size() != static_cast<std::size_t>(d) || im.size() != static_cast<std::size_t>(d))
        throw schema_error("density-matrix re/im must be d x d arrays");
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
        if (!re[r].is_array() || !im[r].is_array() ||
            re[r].size() != static_cast<std::size_t>(d) ||
            im[r].size() != static_cast<std::size_t>(d))
            throw schema_error("density-matrix re/im must be d x d arrays");
        for (int c = 0; c < d; ++c) {
            if (!re[r][c].is_number() || !im[r][c].is_number())
                throw schema_error("density-matrix entries must be numbers");
            m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
        }
    }
    return DensityMatrix(std::move(m));
}

inline void save_density_matrix(const DensityMatrix& rho, const std::string& path) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        nlohmann::json re_row = nlohmann::json::array();
        nlohmann::json im_row = nlohmann::json::array();
        for (int c = 0; c < rho.dim(); ++c) {
            re_row.push_back(rho.matrix()(r, c).real());
            im_row.push_back(rho.matrix()(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    detail::write_file(path, {{"dim", rho.dim()}, {"re", re}, {"im", im}});
}

/// Partition file: array of index groups, 0-based.
inline std::vector<std::vector<int>> parse_partition_json(const nlohmann::json& j) {
    if (!j.is_array()) throw schema_error("partition must be an array of index groups");
    std::vector<std::vector<int>> groups;
    for (const auto& g : j) {
        if (!g.is_array()) throw schema_error("partition group must be an array");
        std::vector<int> group;
        for (const auto& idx : g) {
            if (!idx.is_number_integer()) throw schema_error("partition index must be an integer");
            group.push_back(idx.get<int>());
        }
        groups.push_back(std::move(group));
    }
    return groups;
}

inline std::vector<std::vector<int>> load_partition(const std::string& path) {
    return parse_partition_json(detail::parse_file(path));
}

/// Design file:
///   { "dim": d, "strength": t,
///     "vectors": [ [[re, im], ... d amplitudes], ... K vectors ],
///     "partition": [[indices...], ...] }   (partition optional)
/// Parses and checks shape/norms only; no frame-potential certification.
inline QuantumDesign load_design_raw(const std::string& path) {
    const nlohmann::json j = detail::parse_file(path);
    if (!j.is_object() || !j.contains("dim") || !j.contains("strength") || !j.contains("vectors"))
        throw schema_error("design file needs fields dim, strength, vectors");
    if (!j["dim"].is_number_integer() || !j["strength"].is_number_integer())
        throw schema_error("design dim and strength must be integers");
    const int d = j["dim"].get<int>();
    const int t = j["strength"].get<int>();
    if (!j["vectors"].is_array() || j["vectors"].empty())
        throw schema_error("design vectors must be a non-empty array");

    std::vector<Vector> vectors;
    for (const auto& amps : j["vectors"]) {
        if (!amps.is_array() || amps.size() != static_cast<std::size_t>(d))
            throw schema_error("design vector must list d amplitudes");
        Vector v(d);
        for (int i = 0; i < d; ++i) {
            const auto& pair = amps[i];
            if (!pair.is_array() || pair.size() != 2 ||
                !pair[0].is_number() || !pair[1].is_number())
                throw schema_error("amplitude must be a [re, im] pair");
            v[i] = Complex(pair[0].get<double>(), pair[1].get<double>());
        }
        vectors.push_back(std::move(v));
    }
    std::optional<std::vector<std::vector<int>>> partition;
    if (j.contains("partition") && !j["partition"].is_null())
        partition = parse_partition_json(j["partition"]);

    return QuantumDesign(d, t, std::move(vectors), std::move(partition));
}

/// Loads a design and certifies it; the certification failure is an error
/// kind distinct from schema and norm violations.
inline QuantumDesign load_design(const std::string& path) {
    QuantumDesign design = load_design_raw(path);
    const ValidationReport report = validate_design(design);
    if (!report.passed)
        throw validation_error("design in '" + path + "' failed certification (max deviation " +
                               std::to_string(report.max_deviation) + ", completeness residual " +
                               std::to_string(report.completeness_residual) + ")");
    return design;
}

inline void save_design(const QuantumDesign& design, const std::string& path) {
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& v : design.vectors()) {
        nlohmann::json amps = nlohmann::json::array();
        for (int i = 0; i < design.dim(); ++i)
            amps.push_back({v[i].real(), v[i].imag()});
        vectors.push_back(std::move(amps));
    }
    nlohmann::json j = {{"dim", design.dim()},
                        {"strength", design.strength()},
                        {"vectors", std::move(vectors)}};
    if (design.partition()) j["partition"] = *design.partition();
    detail::write_file(path, j);
}

} // namespace cohbounds
