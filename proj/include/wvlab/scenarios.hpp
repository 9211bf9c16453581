#pragma once

// Scenario registry, JSON config ingestion, experiment orchestration,
// coupling sweeps and machine-readable reporting.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wvlab/weakcore.hpp"

namespace wvlab {

using ordered_json = nlohmann::ordered_json;

enum class Mode { weak, abl, projective, classical, current };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

struct PointerConfig {
    std::size_t n_points = 1024;
    double extent = 40.0;
    double x0 = 0.0;
    double sigma = 1.0;
};

struct ScenarioConfig {
    std::string name = "unnamed";
    Mode mode = Mode::weak;
    std::size_t dimension = 0;

    cvec pre;                         // weak | projective | abl
    Matrix A;                         // weak | projective
    std::optional<Matrix> B_matrix;   // post-selection observable ...
    std::optional<cvec> post;         // ... or explicit post state
    std::size_t outcome = 0;          // B outcome index; ABL projector index
    std::optional<Matrix> U_wi;       // default identity
    std::optional<Matrix> U_fw;       // default identity
    std::vector<double> g;
    PointerConfig pointer;
    std::vector<Matrix> projectors;   // abl

    std::uint64_t seed = 0;
    std::string format = "json";

    std::size_t n_samples = 1000000;  // classical
    double filter_q_above = 0.0;      // classical
    std::optional<double> expected;   // classical reference value

    double k0 = 0.5;                  // current: boost of the Gaussian packet
    double mass = 1.0;                // current

    double rescale_factor = 1.0;      // recorded when pre needed renormalizing
};

// Throws configuration_error listing every violation with its field path.
ScenarioConfig load_config(const ordered_json& doc);
ScenarioConfig load_config_file(const std::string& path);
ordered_json emit_config(const ScenarioConfig& cfg);

struct SweepRecord {
    double g = 0.0;
    cplx weak_value{};
    double re_est = 0.0;
    double im_est = 0.0;
    double ps_prob = 0.0;
    double fidelity_deficit = 0.0;
};

struct AblRow {
    std::string label;
    std::size_t outcome = 0;
    double probability = 0.0;
};

struct AblTable {
    std::string set_label;
    std::vector<AblRow> rows;
};

struct Assertion {
    std::string id;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct Report {
    std::string scenario;
    std::vector<SweepRecord> records;
    std::vector<AblTable> abl_tables;
    std::map<std::string, double> metrics;  // fitted slopes, MC estimates, ...
    std::vector<Assertion> assertions;

    bool all_pass() const;
};

ordered_json report_to_json(const Report& r, bool include_timestamp = true);
std::string report_to_csv(const Report& r);

enum class ThreeBoxMode { per_path, path1_vs_rest, path3_vs_rest, weak_projectors };
ThreeBoxMode three_box_mode_from_string(const std::string& s);

Report run_three_box(ThreeBoxMode mode);
Report run_scenario(const ScenarioConfig& cfg);
Report sweep_coupling(const ScenarioConfig& cfg, const std::vector<double>& gs);

// Shipped scenario presets; example files are generated from this registry.
std::vector<std::string> preset_names();
ScenarioConfig preset(const std::string& name);

// Builds the per-g weak scenario a config describes.
WeakScenario to_weak_scenario(const ScenarioConfig& cfg, double g);

// The three-path pre/post-selected scenario used throughout.
namespace three_box {
cvec pre();
cvec post();
Matrix path_projector(std::size_t j);  // j in {1,2,3}
// Orthonormal post-selection basis with post() at outcome index 0.
SpectralDecomposition post_basis();
} // namespace three_box

} // namespace wvlab
