#include "wvlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace wvlab {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::weak: return "weak";
        case Mode::abl: return "abl";
        case Mode::projective: return "projective";
        case Mode::classical: return "classical";
        case Mode::current: return "current";
    }
    return "weak";
}

Mode mode_from_string(const std::string& s) {
    if (s == "weak") return Mode::weak;
    if (s == "abl") return Mode::abl;
    if (s == "projective") return Mode::projective;
    if (s == "classical") return Mode::classical;
    if (s == "current") return Mode::current;
    throw configuration_error("mode: unknown value '" + s + "'");
}

ThreeBoxMode three_box_mode_from_string(const std::string& s) {
    if (s == "per_path") return ThreeBoxMode::per_path;
    if (s == "path1_vs_rest") return ThreeBoxMode::path1_vs_rest;
    if (s == "path3_vs_rest") return ThreeBoxMode::path3_vs_rest;
    if (s == "weak_projectors") return ThreeBoxMode::weak_projectors;
    throw configuration_error("three-box mode: unknown value '" + s + "'");
}

// ---------------------------------------------------------------------------
// JSON ingestion

namespace {

struct Violations {
    std::vector<std::string> items;
    void add(const std::string& path, const std::string& what) {
        items.push_back(path + ": " + what);
    }
    void raise_if_any() const {
        if (items.empty()) return;
        std::string msg = "config validation failed:";
        for (const auto& it : items) msg += "\n  " + it;
        throw configuration_error(msg);
    }
};

bool parse_complex(const ordered_json& j, cplx& out) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) return false;
    out = cplx(j[0].get<double>(), j[1].get<double>());
    return true;
}

bool parse_cvec(const ordered_json& j, cvec& out, const std::string& path, Violations& v) {
    if (!j.is_array()) {
        v.add(path, "expected an array of [re, im] pairs");
        return false;
    }
    out.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
        cplx c;
        if (!parse_complex(j[i], c)) {
            v.add(path + "[" + std::to_string(i) + "]", "expected [re, im]");
            return false;
        }
        out.push_back(c);
    }
    return true;
}

bool parse_matrix(const ordered_json& j, Matrix& out, const std::string& path, Violations& v) {
    if (!j.is_array() || j.empty()) {
        v.add(path, "expected a non-empty array of rows");
        return false;
    }
    const std::size_t d = j.size();
    out = Matrix(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (!j[i].is_array() || j[i].size() != d) {
            v.add(path + "[" + std::to_string(i) + "]", "expected a row of length " + std::to_string(d));
            return false;
        }
        for (std::size_t k = 0; k < d; ++k) {
            cplx c;
            if (!parse_complex(j[i][k], c)) {
                v.add(path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                      "expected [re, im]");
                return false;
            }
            out(i, k) = c;
        }
    }
    return true;
}

ordered_json complex_to_json(cplx c) { return ordered_json::array({c.real(), c.imag()}); }

ordered_json cvec_to_json(const cvec& v) {
    ordered_json a = ordered_json::array();
    for (const auto& c : v) a.push_back(complex_to_json(c));
    return a;
}

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.dim; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.dim; ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

ScenarioConfig load_config(const ordered_json& doc) {
    Violations v;
    ScenarioConfig cfg;
    if (!doc.is_object()) {
        v.add("$", "expected a JSON object");
        v.raise_if_any();
    }

    if (doc.contains("name")) {
        if (doc["name"].is_string()) cfg.name = doc["name"].get<std::string>();
        else v.add("name", "expected a string");
    }
    if (doc.contains("mode")) {
        try {
            cfg.mode = mode_from_string(doc["mode"].get<std::string>());
        } catch (const std::exception&) {
            v.add("mode", "expected one of weak|abl|projective|classical|current");
        }
    }
    if (doc.contains("seed")) {
        if (doc["seed"].is_number_unsigned() || doc["seed"].is_number_integer())
            cfg.seed = doc["seed"].get<std::uint64_t>();
        else v.add("seed", "expected an unsigned integer");
    }
    if (doc.contains("format")) {
        const auto f = doc["format"].get<std::string>();
        if (f == "json" || f == "csv") cfg.format = f;
        else v.add("format", "expected json|csv");
    }
    if (doc.contains("pointer")) {
        const auto& p = doc["pointer"];
        if (p.contains("n_points")) cfg.pointer.n_points = p["n_points"].get<std::size_t>();
        if (p.contains("extent")) cfg.pointer.extent = p["extent"].get<double>();
        if (p.contains("x0")) cfg.pointer.x0 = p["x0"].get<double>();
        if (p.contains("sigma")) cfg.pointer.sigma = p["sigma"].get<double>();
        try {
            validate(GridSpec{cfg.pointer.n_points, cfg.pointer.extent});
        } catch (const std::exception& e) {
            v.add("pointer", e.what());
        }
        if (cfg.pointer.sigma <= 0.0) v.add("pointer.sigma", "must be positive");
    }
    if (doc.contains("g")) {
        if (doc["g"].is_array()) {
            for (const auto& x : doc["g"]) cfg.g.push_back(x.get<double>());
        } else {
            v.add("g", "expected an array of reals");
        }
    }

    const bool needs_system =
        cfg.mode == Mode::weak || cfg.mode == Mode::projective || cfg.mode == Mode::abl;
    if (needs_system) {
        if (doc.contains("dimension")) cfg.dimension = doc["dimension"].get<std::size_t>();
        else v.add("dimension", "required for mode " + to_string(cfg.mode));

        if (doc.contains("pre")) {
            if (parse_cvec(doc["pre"], cfg.pre, "pre", v) && cfg.dimension &&
                cfg.pre.size() != cfg.dimension)
                v.add("pre", "length does not match dimension");
        } else {
            v.add("pre", "required for mode " + to_string(cfg.mode));
        }
        if (!cfg.pre.empty()) {
            const double n = norm(cfg.pre);
            if (n <= 0.0) {
                v.add("pre", "zero-norm state");
            } else {
                // already-normalized input passes through bit-exact
                if (std::abs(n - 1.0) > 1e-12) {
                    if (std::abs(n - 1.0) > 1e-6) cfg.rescale_factor = 1.0 / n;
                    for (auto& c : cfg.pre) c /= n;
                }
            }
        }
    }

    if (cfg.mode == Mode::weak || cfg.mode == Mode::projective) {
        if (doc.contains("A")) {
            Matrix A;
            if (parse_matrix(doc["A"], A, "A", v)) {
                if (cfg.dimension && A.dim != cfg.dimension)
                    v.add("A", "dimension does not match");
                else if (!is_hermitian(A, kHermitianTol))
                    v.add("A", "not Hermitian within 1e-12");
                else
                    cfg.A = std::move(A);
            }
        } else {
            v.add("A", "required for mode " + to_string(cfg.mode));
        }

        const bool has_B = doc.contains("B");
        if (!has_B) {
            v.add("B", "required: either {matrix, outcome} or {post}");
        } else {
            const auto& B = doc["B"];
            if (B.contains("matrix")) {
                Matrix Bm;
                if (parse_matrix(B["matrix"], Bm, "B.matrix", v)) {
                    if (cfg.dimension && Bm.dim != cfg.dimension)
                        v.add("B.matrix", "dimension does not match");
                    else if (!is_hermitian(Bm, kHermitianTol))
                        v.add("B.matrix", "not Hermitian within 1e-12");
                    else
                        cfg.B_matrix = std::move(Bm);
                }
                if (B.contains("outcome")) cfg.outcome = B["outcome"].get<std::size_t>();
                if (cfg.dimension && cfg.outcome >= cfg.dimension)
                    v.add("B.outcome", "out of range");
            } else if (B.contains("post")) {
                cvec post;
                if (parse_cvec(B["post"], post, "B.post", v)) {
                    if (cfg.dimension && post.size() != cfg.dimension) {
                        v.add("B.post", "length does not match dimension");
                    } else if (norm(post) <= 0.0) {
                        v.add("B.post", "zero-norm state");
                    } else {
                        cfg.post = is_normalized(post) ? post : normalized(post);
                        cfg.outcome = 0;
                    }
                }
            } else {
                v.add("B", "expected either B.matrix (+outcome) or B.post");
            }
        }

        for (auto&& [key, field] : {std::pair<const char*, std::optional<Matrix>*>{"U_wi", &cfg.U_wi},
                                    {"U_fw", &cfg.U_fw}}) {
            if (!doc.contains(key)) continue;
            Matrix U;
            if (parse_matrix(doc[key], U, key, v)) {
                if (cfg.dimension && U.dim != cfg.dimension)
                    v.add(key, "dimension does not match");
                else if (!is_unitary(U, kUnitaryTol))
                    v.add(key, "not unitary within 1e-10");
                else
                    *field = std::move(U);
            }
        }

        if (cfg.mode == Mode::weak) {
            if (cfg.g.empty()) v.add("g", "at least one coupling required for weak mode");
            for (double gv : cfg.g)
                if (gv == 0.0) v.add("g", "weak mode requires nonzero couplings");
        }
        if (cfg.mode == Mode::projective && cfg.g.empty())
            v.add("g", "one coupling required for projective mode");
    }

    if (cfg.mode == Mode::abl) {
        if (doc.contains("post")) {
            cvec post;
            if (parse_cvec(doc["post"], post, "post", v)) {
                if (cfg.dimension && post.size() != cfg.dimension)
                    v.add("post", "length does not match dimension");
                else if (norm(post) <= 0.0)
                    v.add("post", "zero-norm state");
                else
                    cfg.post = is_normalized(post) ? post : normalized(post);
            }
        } else {
            v.add("post", "required for abl mode");
        }
        if (doc.contains("projectors") && doc["projectors"].is_array() &&
            !doc["projectors"].empty()) {
            for (std::size_t i = 0; i < doc["projectors"].size(); ++i) {
                Matrix P;
                if (parse_matrix(doc["projectors"][i], P,
                                 "projectors[" + std::to_string(i) + "]", v))
                    cfg.projectors.push_back(std::move(P));
            }
        } else {
            v.add("projectors", "non-empty array required for abl mode");
        }
        if (doc.contains("outcome")) cfg.outcome = doc["outcome"].get<std::size_t>();
    }

    if (cfg.mode == Mode::classical) {
        if (doc.contains("n_samples")) cfg.n_samples = doc["n_samples"].get<std::size_t>();
        if (cfg.n_samples == 0) v.add("n_samples", "must be positive");
        if (doc.contains("filter_q_above")) cfg.filter_q_above = doc["filter_q_above"].get<double>();
        if (doc.contains("expected")) cfg.expected = doc["expected"].get<double>();
    }

    if (cfg.mode == Mode::current) {
        if (doc.contains("k0")) cfg.k0 = doc["k0"].get<double>();
        if (doc.contains("mass")) cfg.mass = doc["mass"].get<double>();
        if (cfg.mass <= 0.0) v.add("mass", "must be positive");
    }

    v.raise_if_any();
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw configuration_error("cannot open config file: " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw configuration_error(std::string("JSON parse error: ") + e.what());
    }
    return load_config(doc);
}

ordered_json emit_config(const ScenarioConfig& cfg) {
    ordered_json doc;
    doc["name"] = cfg.name;
    doc["mode"] = to_string(cfg.mode);
    const bool needs_system =
        cfg.mode == Mode::weak || cfg.mode == Mode::projective || cfg.mode == Mode::abl;
    if (needs_system) {
        doc["dimension"] = cfg.dimension;
        doc["pre"] = cvec_to_json(cfg.pre);
    }
    if (cfg.mode == Mode::weak || cfg.mode == Mode::projective) {
        doc["A"] = matrix_to_json(cfg.A);
        ordered_json B;
        if (cfg.B_matrix) {
            B["matrix"] = matrix_to_json(*cfg.B_matrix);
            B["outcome"] = cfg.outcome;
        } else if (cfg.post) {
            B["post"] = cvec_to_json(*cfg.post);
        }
        doc["B"] = B;
        if (cfg.U_wi) doc["U_wi"] = matrix_to_json(*cfg.U_wi);
        if (cfg.U_fw) doc["U_fw"] = matrix_to_json(*cfg.U_fw);
    }
    if (cfg.mode == Mode::abl) {
        doc["post"] = cvec_to_json(*cfg.post);
        ordered_json ps = ordered_json::array();
        for (const auto& P : cfg.projectors) ps.push_back(matrix_to_json(P));
        doc["projectors"] = ps;
        doc["outcome"] = cfg.outcome;
    }
    if (!cfg.g.empty()) doc["g"] = cfg.g;
    doc["pointer"] = {{"n_points", cfg.pointer.n_points},
                      {"extent", cfg.pointer.extent},
                      {"x0", cfg.pointer.x0},
                      {"sigma", cfg.pointer.sigma}};
    if (cfg.mode == Mode::classical) {
        doc["n_samples"] = cfg.n_samples;
        doc["filter_q_above"] = cfg.filter_q_above;
        if (cfg.expected) doc["expected"] = *cfg.expected;
    }
    if (cfg.mode == Mode::current) {
        doc["k0"] = cfg.k0;
        doc["mass"] = cfg.mass;
    }
    doc["seed"] = cfg.seed;
    doc["format"] = cfg.format;
    return doc;
}

// ---------------------------------------------------------------------------
// Three-box building blocks

namespace three_box {

cvec pre() {
    const double s = 1.0 / std::sqrt(3.0);
    return {s, s, s};
}

cvec post() {
    const double s = 1.0 / std::sqrt(3.0);
    return {s, -s, s};
}

Matrix path_projector(std::size_t j) {
    if (j < 1 || j > 3) throw contract_violation("path_projector: path index in 1..3");
    Matrix P(3);
    P(j - 1, j - 1) = 1.0;
    return P;
}

SpectralDecomposition post_basis() {
    const double r2 = 1.0 / std::sqrt(2.0);
    const double r6 = 1.0 / std::sqrt(6.0);
    SpectralDecomposition dec;
    dec.eigenvalues = {0.0, 1.0, 2.0};
    dec.eigenvectors = {post(), {r2, r2, 0.0}, {-r6, r6, 2.0 * r6}};
    dec.degenerate = false;
    return dec;
}

} // namespace three_box

// ---------------------------------------------------------------------------
// Orchestration

WeakScenario to_weak_scenario(const ScenarioConfig& cfg, double g) {
    WeakScenario s;
    s.pre = cfg.pre;
    s.A = cfg.A;
    s.g = g;
    const std::size_t d = cfg.dimension;
    s.U_wi = cfg.U_wi ? *cfg.U_wi : Matrix::identity(d);
    s.U_fw = cfg.U_fw ? *cfg.U_fw : Matrix::identity(d);
    if (cfg.B_matrix) {
        s.B = eig_hermitian(*cfg.B_matrix);
        s.f = cfg.outcome;
    } else if (cfg.post) {
        const auto basis = complete_basis(*cfg.post);
        s.B.eigenvectors = basis;
        s.B.eigenvalues.resize(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            s.B.eigenvalues[i] = static_cast<double>(i);
        s.f = 0;
    } else {
        throw configuration_error("scenario has neither B.matrix nor B.post");
    }
    s.pointer = PointerParams{GridSpec{cfg.pointer.n_points, cfg.pointer.extent},
                              cfg.pointer.x0, cfg.pointer.sigma};
    return s;
}

namespace {

Assertion make_assertion(std::string id, double residual, double tolerance) {
    return Assertion{std::move(id), residual <= tolerance, residual, tolerance};
}

SweepRecord weak_record(const ScenarioConfig& cfg, double g) {
    const WeakScenario s = to_weak_scenario(cfg, g);
    const WeakValue wv = weak_value(s);
    const auto [exact, prob] = weak_protocol_exact(s);
    const PointerState prediction = weak_pointer_prediction(s);
    const PointerState baseline =
        make_gaussian(s.pointer.grid, s.pointer.x0, s.pointer.sigma);
    const auto [re_est, im_est] = extract_weak_value_from_pointer(exact, baseline, g);
    return SweepRecord{g, wv.value, re_est, im_est, prob,
                       fidelity_deficit(exact, prediction)};
}

void append_weak_assertions(const ScenarioConfig& cfg, Report& rep) {
    double max_parts_residual = 0.0;
    for (double g : cfg.g) {
        const WeakScenario s = to_weak_scenario(cfg, g);
        const WeakValue wv = weak_value(s);
        const auto [re, im] = weak_value_parts(s);
        max_parts_residual = std::max(
            {max_parts_residual, std::abs(re - wv.re), std::abs(im - wv.im)});
    }
    rep.assertions.push_back(
        make_assertion("weak.parts_match_ratio", max_parts_residual, 1e-12));
}

void run_sweep_into(const ScenarioConfig& cfg, const std::vector<double>& gs, Report& rep) {
    std::vector<double> sorted = gs;
    std::sort(sorted.begin(), sorted.end());
    const WeakValue wv0 = weak_value(to_weak_scenario(cfg, sorted.front()));

    std::vector<double> shift_err, deficit, disturb, g_used;
    for (double g : sorted) {
        SweepRecord rec = weak_record(cfg, g);
        shift_err.push_back(std::abs(rec.re_est - wv0.value.real()));
        deficit.push_back(rec.fidelity_deficit);
        disturb.push_back(std::abs(rec.ps_prob - wv0.ps_probability));
        g_used.push_back(g);
        rep.records.push_back(rec);
    }

    const auto fit_metric = [&](const char* key, const std::vector<double>& r) {
        // Residuals at the noise floor everywhere mean the protocol is exact
        // for this scenario (single-term superposition); a fit would only
        // measure rounding error.
        const double rmax = *std::max_element(r.begin(), r.end());
        if (rmax < 1e-9) {
            rep.assertions.push_back(
                Assertion{std::string(key) + ".skipped_exact", true, rmax, 1e-9});
            return;
        }
        std::vector<double> gp, rp;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i] > 1e-13) {
                gp.push_back(g_used[i]);
                rp.push_back(r[i]);
            }
        }
        if (gp.size() >= 2) rep.metrics[key] = fit_loglog_slope(gp, rp);
    };
    fit_metric("shift_error_slope", shift_err);
    fit_metric("fidelity_deficit_slope", deficit);
    fit_metric("disturbance_slope", disturb);
}

} // namespace

Report run_scenario(const ScenarioConfig& cfg) {
    Report rep;
    rep.scenario = cfg.name;

    switch (cfg.mode) {
        case Mode::weak: {
            std::vector<double> gs = cfg.g;
            std::sort(gs.begin(), gs.end());
            for (double g : gs) rep.records.push_back(weak_record(cfg, g));
            append_weak_assertions(cfg, rep);
            break;
        }
        case Mode::abl: {
            AblTable table;
            table.set_label = cfg.name;
            double sum = 0.0;
            for (std::size_t n = 0; n < cfg.projectors.size(); ++n) {
                const double p = abl_probability(cfg.pre, *cfg.post, cfg.projectors, n);
                table.rows.push_back(AblRow{"outcome" + std::to_string(n), n, p});
                sum += p;
            }
            rep.abl_tables.push_back(table);
            rep.assertions.push_back(
                make_assertion("abl.completeness", std::abs(sum - 1.0), 1e-12));
            break;
        }
        case Mode::projective: {
            const WeakScenario s = to_weak_scenario(cfg, cfg.g.front());
            const cvec psi_w = apply(s.U_wi, s.pre);
            const PointerState phi =
                make_gaussian(s.pointer.grid, s.pointer.x0, s.pointer.sigma);
            const auto spectral = spectral_projectors(eig_hermitian(s.A));
            const JointState J = von_neumann_couple_grouped(psi_w, spectral, phi, s.g);
            AblTable table;
            table.set_label = "post_selection";
            double sum = 0.0;
            for (std::size_t f = 0; f < s.B.dim(); ++f) {
                double p = 0.0;
                try {
                    p = post_select(J, s.B, f, s.U_fw).second;
                } catch (const post_selection_impossible&) {
                    p = 0.0;
                }
                table.rows.push_back(AblRow{"outcome" + std::to_string(f), f, p});
                sum += p;
            }
            rep.abl_tables.push_back(table);
            rep.assertions.push_back(
                make_assertion("projective.completeness", std::abs(sum - 1.0), 1e-12));
            break;
        }
        case Mode::classical: {
            std::normal_distribution<double> dist(0.0, 1.0);
            const double cut = cfg.filter_q_above;
            const MonteCarloResult mc = classical_weak_analogue(
                [&dist](std::mt19937_64& rng) { return dist(rng); },
                [](double q) { return q; }, [cut](double q) { return q > cut; },
                cfg.n_samples, cfg.seed);
            rep.metrics["estimate"] = mc.estimate;
            rep.metrics["std_error"] = mc.std_error;
            rep.metrics["accepted"] = static_cast<double>(mc.accepted);
            if (cfg.expected) {
                rep.assertions.push_back(make_assertion(
                    "classical.within_3se", std::abs(mc.estimate - *cfg.expected),
                    3.0 * mc.std_error));
            }
            break;
        }
        case Mode::current: {
            const GridSpec grid{cfg.pointer.n_points, cfg.pointer.extent};
            PointerState psi = make_gaussian(grid, cfg.pointer.x0, cfg.pointer.sigma);
            for (std::size_t i = 0; i < psi.values.size(); ++i)
                psi.values[i] *= std::polar(1.0, cfg.k0 * grid.x(i));
            // evaluate at the grid point closest to the packet center
            std::size_t idx = 0;
            double best = 1e300;
            for (std::size_t i = 0; i < grid.n_points; ++i) {
                const double d = std::abs(grid.x(i) - cfg.pointer.x0);
                if (d < best) { best = d; idx = i; }
            }
            const CurrentDensityResult r = current_density_weak_value(psi, idx, cfg.mass);
            rep.metrics["re_wv"] = r.re_wv;
            rep.metrics["current_ratio"] = r.current_ratio;
            rep.assertions.push_back(make_assertion(
                "current.identity", std::abs(r.re_wv - r.current_ratio), 1e-6));
            rep.assertions.push_back(
                make_assertion("current.matches_boost", std::abs(r.re_wv - cfg.k0), 1e-6));
            break;
        }
    }
    return rep;
}

Report sweep_coupling(const ScenarioConfig& cfg, const std::vector<double>& gs) {
    if (cfg.mode != Mode::weak)
        throw configuration_error("sweep_coupling: scenario must be in weak mode");
    if (gs.size() < 2) throw configuration_error("sweep_coupling: need at least two couplings");
    Report rep;
    rep.scenario = cfg.name;
    run_sweep_into(cfg, gs, rep);
    append_weak_assertions(cfg, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Three-box runner

namespace {

Report three_box_abl(const char* label, const std::vector<Matrix>& projectors,
                     const std::vector<double>& expected,
                     const std::vector<std::string>& ids) {
    Report rep;
    rep.scenario = std::string("three-box-") + label;
    AblTable table;
    table.set_label = label;
    for (std::size_t n = 0; n < projectors.size(); ++n) {
        const double p =
            abl_probability(three_box::pre(), three_box::post(), projectors, n);
        table.rows.push_back(AblRow{"outcome" + std::to_string(n), n, p});
        rep.assertions.push_back(make_assertion(ids[n], std::abs(p - expected[n]), 1e-12));
    }
    rep.abl_tables.push_back(table);
    return rep;
}

ScenarioConfig three_box_weak_config(std::size_t path) {
    ScenarioConfig cfg;
    cfg.name = "three-box-weak-pi" + std::to_string(path);
    cfg.mode = Mode::weak;
    cfg.dimension = 3;
    cfg.pre = three_box::pre();
    cfg.A = three_box::path_projector(path);
    cfg.post = three_box::post();
    cfg.g = {1e-1, 1e-2, 1e-3, 1e-4};
    return cfg;
}

} // namespace

Report run_three_box(ThreeBoxMode mode) {
    using namespace three_box;
    switch (mode) {
        case ThreeBoxMode::per_path:
            return three_box_abl(
                "per_path", {path_projector(1), path_projector(2), path_projector(3)},
                {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
                {"three_box.per_path.p1", "three_box.per_path.p2", "three_box.per_path.p3"});
        case ThreeBoxMode::path1_vs_rest:
            return three_box_abl(
                "path1_vs_rest",
                {path_projector(1), path_projector(2) + path_projector(3)}, {1.0, 0.0},
                {"three_box.path1_vs_rest.p1", "three_box.path1_vs_rest.p23"});
        case ThreeBoxMode::path3_vs_rest:
            return three_box_abl(
                "path3_vs_rest",
                {path_projector(3), path_projector(1) + path_projector(2)}, {1.0, 0.0},
                {"three_box.path3_vs_rest.p3", "three_box.path3_vs_rest.p12"});
        case ThreeBoxMode::weak_projectors: {
            Report rep;
            rep.scenario = "three-box-weak-projectors";
            const double expected[3] = {1.0, -1.0, 1.0};
            double wv_sum = 0.0;
            for (std::size_t path = 1; path <= 3; ++path) {
                ScenarioConfig cfg = three_box_weak_config(path);
                const WeakValue wv = weak_value(to_weak_scenario(cfg, cfg.g.front()));
                wv_sum += wv.re;
                const std::string tag = "three_box.weak.pi" + std::to_string(path);
                rep.metrics[tag + ".re"] = wv.re;
                rep.metrics[tag + ".im"] = wv.im;
                rep.assertions.push_back(make_assertion(
                    tag, std::abs(wv.value - cplx(expected[path - 1], 0.0)), 1e-12));

                // sweep evidence that the pointer estimate converges
                Report sweep = sweep_coupling(cfg, cfg.g);
                const SweepRecord& finest = sweep.records.front();
                rep.assertions.push_back(make_assertion(
                    tag + ".estimate_converges",
                    std::abs(finest.re_est - expected[path - 1]), 0.01));
                for (const auto& rec : sweep.records) rep.records.push_back(rec);
                if (auto it = sweep.metrics.find("shift_error_slope"); it != sweep.metrics.end())
                    rep.metrics[tag + ".shift_error_slope"] = it->second;
            }
            rep.assertions.push_back(
                make_assertion("three_box.weak.projector_completeness",
                               std::abs(wv_sum - 1.0), 1e-12));
            return rep;
        }
    }
    throw configuration_error("run_three_box: unknown mode");
}

// ---------------------------------------------------------------------------
// Presets

std::vector<std::string> preset_names() {
    return {"three-box-weak",          "three-box-abl-per-path",
            "three-box-abl-path1-vs-rest", "three-box-abl-path3-vs-rest",
            "qubit-pre-equals-post",   "null-weak-value",
            "classical-gaussian-filter", "current-boosted-gaussian"};
}

ScenarioConfig preset(const std::string& name) {
    if (name == "three-box-weak") {
        ScenarioConfig cfg = three_box_weak_config(2);
        cfg.name = "three-box-weak";
        return cfg;
    }
    if (name == "three-box-abl-per-path" || name == "three-box-abl-path1-vs-rest" ||
        name == "three-box-abl-path3-vs-rest") {
        ScenarioConfig cfg;
        cfg.name = name;
        cfg.mode = Mode::abl;
        cfg.dimension = 3;
        cfg.pre = three_box::pre();
        cfg.post = three_box::post();
        if (name == "three-box-abl-per-path")
            cfg.projectors = {three_box::path_projector(1), three_box::path_projector(2),
                              three_box::path_projector(3)};
        else if (name == "three-box-abl-path1-vs-rest")
            cfg.projectors = {three_box::path_projector(1),
                              three_box::path_projector(2) + three_box::path_projector(3)};
        else
            cfg.projectors = {three_box::path_projector(3),
                              three_box::path_projector(1) + three_box::path_projector(2)};
        return cfg;
    }
    if (name == "qubit-pre-equals-post") {
        ScenarioConfig cfg;
        cfg.name = name;
        cfg.mode = Mode::weak;
        cfg.dimension = 2;
        const double r2 = 1.0 / std::sqrt(2.0);
        cfg.pre = {r2, r2};
        cfg.A = Matrix(2, {1.0, 0.0, 0.0, -1.0});
        cfg.post = cfg.pre;
        cfg.g = {1e-2};
        return cfg;
    }
    if (name == "null-weak-value") {
        // projector onto a state orthogonal to the three-box pre-state
        ScenarioConfig cfg;
        cfg.name = name;
        cfg.mode = Mode::weak;
        cfg.dimension = 3;
        cfg.pre = three_box::pre();
        const double r2 = 1.0 / std::sqrt(2.0);
        cfg.A = projector(cvec{r2, -r2, 0.0});
        cfg.post = three_box::post();
        cfg.g = {1e-1, 1e-2, 1e-3, 1e-4};
        return cfg;
    }
    if (name == "classical-gaussian-filter") {
        ScenarioConfig cfg;
        cfg.name = name;
        cfg.mode = Mode::classical;
        cfg.n_samples = 1000000;
        cfg.filter_q_above = 0.0;
        cfg.expected = std::sqrt(2.0 / 3.14159265358979323846);
        cfg.seed = 20240817;
        return cfg;
    }
    if (name == "current-boosted-gaussian") {
        ScenarioConfig cfg;
        cfg.name = name;
        cfg.mode = Mode::current;
        cfg.k0 = 0.5;
        cfg.mass = 1.0;
        return cfg;
    }
    throw configuration_error("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// Reporting

bool Report::all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(),
                       [](const Assertion& a) { return a.pass; });
}

namespace {

std::string utc_timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void csv_row(std::string& out, std::initializer_list<double> vals) {
    char buf[64];
    bool first = true;
    for (double v : vals) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (!first) out += ',';
        out += buf;
        first = false;
    }
    out += '\n';
}

} // namespace

ordered_json report_to_json(const Report& r, bool include_timestamp) {
    ordered_json doc;
    doc["scenario"] = r.scenario;
    if (include_timestamp) doc["generated_at"] = utc_timestamp();
    ordered_json records = ordered_json::array();
    for (const auto& rec : r.records) {
        records.push_back({{"g", rec.g},
                           {"weak_value", {rec.weak_value.real(), rec.weak_value.imag()}},
                           {"re_est", rec.re_est},
                           {"im_est", rec.im_est},
                           {"ps_prob", rec.ps_prob},
                           {"fidelity_deficit", rec.fidelity_deficit}});
    }
    doc["records"] = records;
    if (!r.abl_tables.empty()) {
        ordered_json tables = ordered_json::array();
        for (const auto& t : r.abl_tables) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : t.rows)
                rows.push_back({{"label", row.label},
                                {"outcome", row.outcome},
                                {"probability", row.probability}});
            tables.push_back({{"set", t.set_label}, {"rows", rows}});
        }
        doc["abl_tables"] = tables;
    }
    if (!r.metrics.empty()) {
        ordered_json m;
        for (const auto& [k, v] : r.metrics) m[k] = v;
        doc["metrics"] = m;
    }
    ordered_json asserts = ordered_json::array();
    for (const auto& a : r.assertions)
        asserts.push_back({{"id", a.id},
                           {"pass", a.pass},
                           {"residual", a.residual},
                           {"tolerance", a.tolerance}});
    doc["assertions"] = asserts;
    return doc;
}

std::string report_to_csv(const Report& r) {
    std::string out;
    if (!r.records.empty()) {
        out += "g,wv_re,wv_im,re_est,im_est,ps_prob,fidelity_deficit\n";
        for (const auto& rec : r.records)
            csv_row(out, {rec.g, rec.weak_value.real(), rec.weak_value.imag(), rec.re_est,
                          rec.im_est, rec.ps_prob, rec.fidelity_deficit});
    }
    for (const auto& t : r.abl_tables) {
        out += "set,outcome,probability\n";
        for (const auto& row : t.rows) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", row.probability);
            out += t.set_label + ',' + std::to_string(row.outcome) + ',' + buf + '\n';
        }
    }
    return out;
}

} // namespace wvlab
