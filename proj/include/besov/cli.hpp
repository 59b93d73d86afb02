#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "besov/config.hpp"
#include "besov/grid.hpp"

namespace besov {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCertificateFailure = 1;
inline constexpr int kExitConfigError = 2;

// File stem for a corpus name: "hermite(1,1)" -> "hermite_1_1".
std::string artifact_stem(std::string_view corpus_name);
// <dir>/<stem>_<dim>d.grid
std::string corpus_file(const std::string& dir, std::string_view name, int dim);

// Loads from config.corpus_dir when set (ConfigError naming the expected path if absent), else builds.
GridFunction corpus_function(const RunConfig& config, const std::string& name, int dim);

// Runs one subcommand, writing artifacts under config.out_dir and one line per artifact to log.
// Only `certify` returns kExitCertificateFailure; the studies record their verdicts in their JSON.
int run(const RunConfig& config, std::ostream& log);

}  // namespace besov
