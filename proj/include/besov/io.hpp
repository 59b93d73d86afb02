#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "besov/grid.hpp"

namespace besov {

// Text container: a header of key/value lines followed by one sample per line (%.17g).
// The reader skips leading lines that start with '#'.
void write_grid_function(std::ostream& os, const GridFunction& f);
GridFunction read_grid_function(std::istream& is);
void save_grid_function(const std::filesystem::path& path, const GridFunction& f);
GridFunction load_grid_function(const std::filesystem::path& path);

// One coordinate tuple plus value per line.
void write_grid_csv(std::ostream& os, const GridFunction& f);

std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace besov
