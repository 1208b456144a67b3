#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kinklab/config.hpp"
#include "kinklab/runner.hpp"

namespace fs = std::filesystem;

namespace {

std::string resolve_preset(const std::string& name) {
    fs::path p = fs::path(KINKLAB_PRESET_DIR) / (name + ".cfg");
    if (!fs::exists(p)) {
        std::cerr << "error: no preset '" << name << "' (looked in " << KINKLAB_PRESET_DIR << ")\n";
        std::exit(2);
    }
    return p.string();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phi^4 kink / impurity simulation toolkit"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir;
    int workers = -1;

    auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
    run_cmd->add_option("config", config_path, "config file");
    run_cmd->add_option("--preset", preset, "named preset (fig1..fig5, table1)");
    run_cmd->add_option("--out", out_dir, "output directory override");
    run_cmd->add_option("--workers", workers, "sweep worker count");

    auto* val_cmd = app.add_subcommand("validate", "check a config without running it");
    val_cmd->add_option("config", config_path, "config file");
    val_cmd->add_option("--preset", preset, "named preset");

    CLI11_PARSE(app, argc, argv);

    try {
        if (config_path.empty() && preset.empty()) {
            std::cerr << "error: give a config file or --preset\n";
            return 2;
        }
        std::string path = config_path.empty() ? resolve_preset(preset) : config_path;

        if (val_cmd->parsed()) {
            kinklab::ValidationReport rep = kinklab::validate_config(kinklab::parse_config(path));
            if (rep.ok()) {
                std::cout << "ok\n";
                return 0;
            }
            for (const auto& e : rep.errors) std::cerr << "error: " << e << "\n";
            return 2;
        }

        kinklab::RunResult res = kinklab::run_file(path, out_dir, workers);
        std::cout << res.summary << "\n";
        return res.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
