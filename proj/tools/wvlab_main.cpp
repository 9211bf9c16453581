#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wvlab/scenarios.hpp"

namespace {

int write_report(const wvlab::Report& rep, const std::string& out_path,
                 const std::string& format) {
    std::string payload;
    if (format == "csv") payload = wvlab::report_to_csv(rep);
    else payload = wvlab::report_to_json(rep).dump(2) + "\n";

    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << payload;
    }
    for (const auto& a : rep.assertions) {
        std::cerr << (a.pass ? "[PASS] " : "[FAIL] ") << a.id
                  << " residual=" << a.residual << " tol=" << a.tolerance << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"wvlab: pre/post-selected quantum measurement laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_path, format, mode_str, preset_name;
    std::optional<std::uint64_t> seed;
    std::vector<double> g_list;
    bool list_presets = false;

    auto* run = app.add_subcommand("run", "run a scenario config file");
    run->add_option("config", config_path, "scenario JSON config")->required();
    run->add_option("--out", out_path, "output file (default stdout)");
    run->add_option("--format", format, "json|csv (default from config)");
    run->add_option("--seed", seed, "override the config seed");

    auto* tb = app.add_subcommand("three-box", "run a built-in three-box scenario");
    tb->add_option("--mode", mode_str,
                   "per_path|path1_vs_rest|path3_vs_rest|weak_projectors")
        ->required();
    tb->add_option("--out", out_path, "output file (default stdout)");
    tb->add_option("--format", format, "json|csv (default json)");

    auto* sweep = app.add_subcommand("sweep", "coupling sweep over a weak scenario");
    sweep->add_option("config", config_path, "scenario JSON config")->required();
    sweep->add_option("--g", g_list, "couplings (overrides the config list)")->delimiter(',');
    sweep->add_option("--out", out_path, "output file (default stdout)");
    sweep->add_option("--format", format, "json|csv (default from config)");
    sweep->add_option("--seed", seed, "override the config seed");

    auto* pre = app.add_subcommand("preset", "emit a registry preset config");
    pre->add_option("name", preset_name, "preset name");
    pre->add_flag("--list", list_presets, "list preset names");
    pre->add_option("--out", out_path, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pre->parsed()) {
            if (list_presets) {
                for (const auto& n : wvlab::preset_names()) std::cout << n << "\n";
                return 0;
            }
            if (preset_name.empty()) {
                std::cerr << "error: preset name required (or --list)\n";
                return 2;
            }
            const auto doc = wvlab::emit_config(wvlab::preset(preset_name));
            if (out_path.empty()) {
                std::cout << doc.dump(2) << "\n";
            } else {
                std::ofstream out(out_path);
                if (!out) {
                    std::cerr << "error: cannot write " << out_path << "\n";
                    return 2;
                }
                out << doc.dump(2) << "\n";
            }
            return 0;
        }

        if (tb->parsed()) {
            const auto rep = wvlab::run_three_box(wvlab::three_box_mode_from_string(mode_str));
            return write_report(rep, out_path, format.empty() ? "json" : format);
        }

        wvlab::ScenarioConfig cfg = wvlab::load_config_file(config_path);
        if (seed) cfg.seed = *seed;
        if (cfg.rescale_factor != 1.0)
            std::cerr << "warning: pre-state renormalized on load (factor "
                      << cfg.rescale_factor << ")\n";

        wvlab::Report rep;
        if (sweep->parsed()) {
            rep = wvlab::sweep_coupling(cfg, g_list.empty() ? cfg.g : g_list);
        } else {
            rep = wvlab::run_scenario(cfg);
        }
        return write_report(rep, out_path, format.empty() ? cfg.format : format);
    } catch (const wvlab::configuration_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const wvlab::contract_violation& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
