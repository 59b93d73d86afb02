#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "besov/cli.hpp"
#include "besov/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Fractional Besov smoothness functionals and inequality certificates"};
    app.set_version_flag("--version", std::string(besov::kVersion));
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> overrides;
    const std::vector<std::pair<const char*, const char*>> subs{
        {"corpus", "write the test functions as grid files"},
        {"seminorm", "shift seminorm, U functional and best V witness per function and (p, alpha)"},
        {"semigroup", "deviation and gradient curves of the heat or Ornstein-Uhlenbeck semigroup"},
        {"certify", "run every certificate suite; exit 1 if a non-informative entry fails"},
        {"counterexample", "slice blow-up profiles and the directional bound scan"},
        {"measure", "shift distances, Holder fits, metric axioms and chaining reports"},
    };
    for (const auto& [name, help] : subs) {
        auto* s = app.add_subcommand(name, help);
        s->add_option("-c,--config", config_path, "flat key = value file");
        s->add_option("-o,--out", out_dir, "output directory (beats " + std::string(besov::kOutDirEnv) + ")");
        s->add_option("overrides", overrides, "key=value overrides");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : besov::kExitConfigError;
    }

    try {
        const std::string sub = app.get_subcommands().front()->get_name();
        const besov::KeyValues file = config_path.empty() ? besov::KeyValues{} : besov::read_key_values(config_path);
        besov::KeyValues over = besov::parse_overrides(overrides);
        if (!out_dir.empty()) over["out_dir"] = out_dir;
        const auto cfg = besov::make_run_config(sub, file, over, std::getenv(besov::kOutDirEnv));
        return besov::run(cfg, std::cout);
    } catch (const besov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return besov::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return besov::kExitConfigError;
    }
}
