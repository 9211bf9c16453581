#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "wvlab/scenarios.hpp"

using namespace wvlab;

namespace {

ordered_json minimal_weak_doc() {
    return ordered_json{
        {"name", "qubit"},
        {"mode", "weak"},
        {"dimension", 2},
        {"pre", {{1.0, 0.0}, {1.0, 0.0}}},
        {"A", {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {-1.0, 0.0}}}},
        {"B", {{"post", {{1.0, 0.0}, {0.5, 0.0}}}}},
        {"g", {0.01}},
    };
}

} // namespace

TEST_CASE("load_config applies defaults and renormalizes the pre-state") {
    const ScenarioConfig cfg = load_config(minimal_weak_doc());
    CHECK(cfg.name == "qubit");
    CHECK(cfg.mode == Mode::weak);
    CHECK(cfg.dimension == 2);
    CHECK(cfg.pointer.n_points == 1024);
    CHECK(cfg.pointer.extent == doctest::Approx(40.0));
    CHECK(cfg.pointer.sigma == doctest::Approx(1.0));
    CHECK(cfg.seed == 0);
    CHECK(cfg.format == "json");
    CHECK(is_normalized(cfg.pre));
    CHECK(cfg.rescale_factor != doctest::Approx(1.0));
    REQUIRE(cfg.post.has_value());
    CHECK(is_normalized(*cfg.post));
}

TEST_CASE("load_config reports every violation with its field path") {
    ordered_json doc = minimal_weak_doc();
    doc.erase("pre");
    doc["A"] = ordered_json{{{1.0, 0.0}, {2.0, 0.0}}, {{3.0, 0.0}, {4.0, 0.0}}};
    doc["g"] = ordered_json::array();
    try {
        load_config(doc);
        FAIL("expected configuration_error");
    } catch (const configuration_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("pre") != std::string::npos);
        CHECK(msg.find("A") != std::string::npos);
        CHECK(msg.find("g") != std::string::npos);
    }
}

TEST_CASE("load_config rejects non-Hermitian A and non-unitary U_fw by name") {
    ordered_json doc = minimal_weak_doc();
    doc["A"][0][1] = {5.0, 0.0};
    doc["U_fw"] = ordered_json{{{2.0, 0.0}, {0.0, 0.0}}, {{0.0, 0.0}, {2.0, 0.0}}};
    try {
        load_config(doc);
        FAIL("expected configuration_error");
    } catch (const configuration_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("A") != std::string::npos);
        CHECK(msg.find("Hermitian") != std::string::npos);
        CHECK(msg.find("U_fw") != std::string::npos);
    }
}

TEST_CASE("emit_config round-trips through load_config") {
    const ScenarioConfig cfg = load_config(minimal_weak_doc());
    const ScenarioConfig again = load_config(emit_config(cfg));
    CHECK(again.name == cfg.name);
    CHECK(again.mode == cfg.mode);
    CHECK(again.dimension == cfg.dimension);
    CHECK(again.g == cfg.g);
    for (std::size_t i = 0; i < cfg.pre.size(); ++i)
        CHECK(std::abs(again.pre[i] - cfg.pre[i]) < 1e-15);
    REQUIRE(again.post.has_value());
    for (std::size_t i = 0; i < cfg.post->size(); ++i)
        CHECK(std::abs((*again.post)[i] - (*cfg.post)[i]) < 1e-15);
}

TEST_CASE("every registry preset emits a loadable config") {
    for (const auto& name : preset_names()) {
        const ScenarioConfig cfg = preset(name);
        const ScenarioConfig loaded = load_config(emit_config(cfg));
        CHECK(loaded.name == cfg.name);
        CHECK(loaded.mode == cfg.mode);
    }
    CHECK_THROWS_AS(preset("no-such-preset"), configuration_error);
}

TEST_CASE("shipped preset files match the built-in registry") {
    for (const auto& name : preset_names()) {
        const ScenarioConfig from_file =
            load_config_file(std::string(WVLAB_PRESET_DIR) + "/" + name + ".json");
        const ScenarioConfig from_registry = preset(name);
        CHECK(emit_config(from_file) == emit_config(from_registry));
    }
}

TEST_CASE("qubit pre-equals-post preset runs and passes its assertions") {
    const Report rep = run_scenario(preset("qubit-pre-equals-post"));
    CHECK(rep.all_pass());
    REQUIRE(!rep.records.empty());
    CHECK(std::abs(rep.records[0].weak_value.imag()) < 1e-12);
}

TEST_CASE("null-weak-value preset reports a vanishing weak value") {
    const Report rep = run_scenario(preset("null-weak-value"));
    CHECK(rep.all_pass());
    REQUIRE(!rep.records.empty());
    CHECK(std::abs(rep.records[0].weak_value) < 1e-12);
}

TEST_CASE("classical preset lands within three standard errors of its reference") {
    const Report rep = run_scenario(preset("classical-gaussian-filter"));
    CHECK(rep.all_pass());
    CHECK(rep.metrics.count("estimate") == 1);
    CHECK(rep.metrics.count("std_error") == 1);
}

TEST_CASE("current preset satisfies the current-density identity") {
    const Report rep = run_scenario(preset("current-boosted-gaussian"));
    CHECK(rep.all_pass());
    CHECK(rep.metrics.at("re_wv") == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("three-box modes reproduce the conditional probability table") {
    const Report per_path = run_three_box(ThreeBoxMode::per_path);
    CHECK(per_path.all_pass());
    REQUIRE(per_path.abl_tables.size() == 1);
    for (const auto& row : per_path.abl_tables[0].rows)
        CHECK(row.probability == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    const Report p1 = run_three_box(ThreeBoxMode::path1_vs_rest);
    CHECK(p1.all_pass());
    CHECK(p1.abl_tables[0].rows[0].probability == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p1.abl_tables[0].rows[1].probability == doctest::Approx(0.0));

    const Report weak = run_three_box(ThreeBoxMode::weak_projectors);
    CHECK(weak.all_pass());
    CHECK(weak.metrics.at("three_box.weak.pi1.re") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weak.metrics.at("three_box.weak.pi2.re") == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(weak.metrics.at("three_box.weak.pi3.re") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweep_coupling guards its inputs") {
    ScenarioConfig abl = preset("three-box-abl-per-path");
    CHECK_THROWS_AS(sweep_coupling(abl, {0.1, 0.01}), configuration_error);
    ScenarioConfig weak = preset("three-box-weak");
    CHECK_THROWS_AS(sweep_coupling(weak, {0.1}), configuration_error);
}

TEST_CASE("reports serialize deterministically once the timestamp is excluded") {
    const Report a = run_scenario(preset("classical-gaussian-filter"));
    const Report b = run_scenario(preset("classical-gaussian-filter"));
    CHECK(report_to_json(a, false).dump(2) == report_to_json(b, false).dump(2));

    const Report c = run_three_box(ThreeBoxMode::weak_projectors);
    const Report d = run_three_box(ThreeBoxMode::weak_projectors);
    CHECK(report_to_json(c, false).dump(2) == report_to_json(d, false).dump(2));
    CHECK(report_to_json(c).contains("generated_at"));
}

TEST_CASE("csv serialization carries headers and one line per record") {
    const Report rep = run_three_box(ThreeBoxMode::weak_projectors);
    const std::string csv = report_to_csv(rep);
    CHECK(csv.find("g,") != std::string::npos);
    CHECK(csv.find("fidelity_deficit") != std::string::npos);
    const auto lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines > static_cast<long>(rep.records.size()));
}
