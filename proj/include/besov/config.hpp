#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "besov/grid.hpp"
#include "json.hpp"

namespace besov {

// Raised for anything wrong with a configuration; field() names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

using KeyValues = std::map<std::string, std::string>;

// `key = value` per line; blank lines and lines starting with '#' are skipped. Later keys win.
KeyValues parse_key_values(std::string_view text, std::string_view origin = "config");
KeyValues read_key_values(const std::string& path);
// "key=value" tokens from the command line.
KeyValues parse_overrides(const std::vector<std::string>& tokens);

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> corpus;  // empty: the subcommand's default selection
    std::string corpus_dir;           // read functions from here instead of building them
    int dim = 1;
    std::vector<int> dims{1, 2};      // certify only
    std::optional<Axis> grid_x, grid_y;
    std::vector<double> ps{1.0, 2.0};
    std::vector<double> alphas{0.25, 0.5, 1.0};
    double t_min = 1e-4, t_max = 1e2;
    std::size_t t_count = 64;
    std::size_t h_count = 40;
    int budget = 20;
    std::uint64_t seed = 20240611;
    std::string out_dir = ".";

    double ce_alpha = 0.5;
    std::vector<std::size_t> ce_n_list{1000, 10000};
    std::size_t ce_y_samples = 100;
    std::size_t ce_k_start = 2;

    std::vector<double> betas{0.25, 0.4};
    std::size_t chaining_depth = 6;

    // Resolved values of every recognised key except out_dir, so artifacts written to different places compare equal.
    nlohmann::json echo() const;
    std::vector<double> t_grid() const;
    Grid grid(int d) const;
};

inline constexpr const char* kOutDirEnv = "BESOV_OUT_DIR";

// Precedence: overrides > environment (out_dir only) > file > defaults. Unknown keys are errors.
RunConfig make_run_config(std::string subcommand, const KeyValues& file, const KeyValues& overrides,
                          const char* env_out_dir = nullptr);

std::vector<std::string> config_keys();

}  // namespace besov
