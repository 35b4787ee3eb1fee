#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "steadytime/csv.hpp"
#include "steadytime/run.hpp"

using namespace steadytime;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

RunConfig default_config() {
    RunConfig cfg;
    cfg.problems = bundled_cases();
    cfg.methods = {1, 2, 3};
    cfg.k_list = {1, 2, 5, 10};
    cfg.delta_list = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    return cfg;
}

int finish(const RunResult& result) {
    for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
    for (const auto& f : result.failures) std::cerr << "cell failed: " << f << "\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite transition times of linear diffusion via moment estimators"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    int terms = 50;
    bool audit = false;
    bool exact = false, use_float = false;
    int k = 10;
    double delta = 1e-2;

    auto add_common = [&](CLI::App* cmd, bool with_config) {
        if (with_config) cmd->add_option("--config", config_path, "Problem/run config JSON");
        cmd->add_option("--out", out_dir, "Output directory");
        cmd->add_option("--terms", terms, "Eigenfunction series terms");
        auto* ex = cmd->add_flag("--exact", exact, "Exact (rational) moment arithmetic");
        cmd->add_flag("--float", use_float, "Double-precision moment arithmetic")
            ->excludes(ex);
        cmd->add_flag("--audit", audit, "Emit per-cell provenance audit.json");
    };

    auto* run_cmd = app.add_subcommand("run", "Run the configured estimator suite");
    bool want_t2 = false, want_t3 = false, want_t4 = false, want_profile = false;
    add_common(run_cmd, true);
    run_cmd->add_flag("--table2", want_t2, "Also emit table2.csv");
    run_cmd->add_flag("--table3", want_t3, "Also emit table3.csv");
    run_cmd->add_flag("--table4", want_t4, "Also emit table4.csv");
    run_cmd->add_flag("--profile", want_profile, "Also emit per-problem profiles");
    run_cmd->add_option("--k", k, "Moment index for --profile / table4 depth");
    run_cmd->add_option("--delta", delta, "Tolerance for --profile");
    run_cmd->get_option("--config")->required();

    auto* t2_cmd = app.add_subcommand("table2", "Residual errors of the global estimates");
    add_common(t2_cmd, true);

    auto* t3_cmd = app.add_subcommand("table3", "Exact vs estimated global times");
    add_common(t3_cmd, true);

    auto* t4_cmd = app.add_subcommand("table4", "Generalized-case scaling constants");
    add_common(t4_cmd, false);
    int k_max = 20;
    t4_cmd->add_option("--k", k_max, "Largest moment index (even rows up to here)");

    auto* prof_cmd = app.add_subcommand("profile", "Local transition-time profiles");
    add_common(prof_cmd, true);
    prof_cmd->add_option("--k", k, "Moment index");
    prof_cmd->add_option("--delta", delta, "Tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        RunConfig cfg =
            config_path.empty() ? default_config() : load_run_config(config_path);
        if (exact) cfg.exact = true;
        if (use_float) cfg.exact = false;
        cfg.terms = terms;

        RunOutputs outputs;
        outputs.out_dir = out_dir;
        outputs.audit = audit;

        if (app.got_subcommand(t4_cmd)) {
            std::filesystem::create_directories(out_dir);
            auto rows = table4_rows(k_max, !use_float);
            auto path = std::filesystem::path(out_dir) / "table4.csv";
            std::ofstream os(path, std::ios::binary);
            if (!os) throw ConfigError("cannot write " + path.string());
            table4_csv(os, rows);
            std::cout << "wrote " << path.string() << "\n";
            return 0;
        }

        if (app.got_subcommand(run_cmd)) {
            outputs.table2 = want_t2;
            outputs.table3 = want_t3;
            outputs.profile = want_profile;
            outputs.profile_k = k;
            outputs.profile_delta = delta;
            auto result = run(cfg, outputs);
            if (want_t4) {
                auto rows = table4_rows(k_max, cfg.exact);
                auto path = std::filesystem::path(out_dir) / "table4.csv";
                std::ofstream os(path, std::ios::binary);
                table4_csv(os, rows);
                std::cout << "wrote " << path.string() << "\n";
            }
            return finish(result);
        }
        if (app.got_subcommand(t2_cmd)) {
            outputs.table2 = true;
            return finish(run(cfg, outputs));
        }
        if (app.got_subcommand(t3_cmd)) {
            outputs.table3 = true;
            return finish(run(cfg, outputs));
        }
        if (app.got_subcommand(prof_cmd)) {
            outputs.profile = true;
            outputs.profile_k = k;
            outputs.profile_delta = delta;
            return finish(run(cfg, outputs));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
