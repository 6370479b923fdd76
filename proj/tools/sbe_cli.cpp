// sbe: run lattice experiments from a JSON config.
#include <iostream>

#include <CLI11.hpp>

#include "sbe/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Lattice toolkit for the discrete stochastic Burgers equation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", sbe::kLibraryVersion);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed_flag;
    std::uint64_t seed_value = 0;

    for (const auto& kind : sbe::kExperimentKinds) {
        auto* sub = app.add_subcommand(kind, "run the " + kind + " experiment");
        sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed_value, "seed used when the config has none");
        sub->add_option("--out", out_dir, "output root (overrides the config)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    auto* sub = app.get_subcommands().front();
    if (sub->count("--seed")) seed_flag = seed_value;

    sbe::ExperimentConfig cfg;
    try {
        cfg = sbe::parse_config(config_path);
        if (cfg.kind != sub->get_name())
            throw sbe::ConfigError("config kind '" + cfg.kind + "' does not match subcommand '" + sub->get_name() + "'");
        cfg.seed = sbe::resolve_seed(cfg, seed_flag);
    } catch (const std::exception& e) {
        std::cerr << "sbe: " << e.what() << "\n";
        return 1;
    }
    try {
        auto b = sbe::run_experiment(cfg, out_dir.empty() ? cfg.output : out_dir);
        std::cout << b.dir.string() << "\n";
        if (b.exit_code == 3) std::cerr << "sbe: solution blew up, see run.json\n";
        return b.exit_code;
    } catch (const sbe::ConfigError& e) {
        std::cerr << "sbe: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "sbe: runtime error: " << e.what() << "\n";
        return 2;
    }
}
