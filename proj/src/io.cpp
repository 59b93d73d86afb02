#include "besov/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace besov {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_function(std::ostream& os, const GridFunction& f) {
    const Grid& g = f.grid();
    os << "besov-grid-function 1\n";
    os << "dim " << g.dim() << "\n";
    os << "measure " << to_string(f.measure()) << "\n";
    for (int i = 0; i < g.dim(); ++i) {
        const Axis& a = g.axis(i);
        os << "axis" << i << ' ' << format_double(a.lo) << ' ' << format_double(a.hi) << ' ' << a.n << "\n";
    }
    os << "samples " << f.size() << "\n";
    for (double v : f.values()) os << format_double(v) << "\n";
}

GridFunction read_grid_function(std::istream& is) {
    auto fail = [](const std::string& what) { throw std::invalid_argument("grid function container: " + what); };
    // leading '#' lines carry provenance and are skipped
    while (is.peek() == '#') is.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "besov-grid-function" || version != 1) fail("bad header");
    std::string key;
    int dim = 0;
    std::string measure;
    if (!(is >> key >> dim) || key != "dim" || (dim != 1 && dim != 2)) fail("bad dim");
    if (!(is >> key >> measure) || key != "measure") fail("bad measure");
    std::vector<Axis> axes;
    for (int i = 0; i < dim; ++i) {
        Axis a;
        if (!(is >> key >> a.lo >> a.hi >> a.n) || key != "axis" + std::to_string(i)) fail("bad axis line");
        axes.push_back(a);
    }
    std::size_t count = 0;
    if (!(is >> key >> count) || key != "samples") fail("bad samples line");
    const Grid g = dim == 1 ? Grid(axes[0]) : Grid(axes[0], axes[1]);
    if (count != g.size()) fail("sample count does not match axes");
    std::vector<double> v(count);
    for (auto& x : v)
        if (!(is >> x)) fail("truncated samples");
    return GridFunction(g, measure_from_string(measure), std::move(v));
}

void save_grid_function(const std::filesystem::path& path, const GridFunction& f) {
    std::ostringstream os;
    write_grid_function(os, f);
    write_text_file(path, os.str());
}

GridFunction load_grid_function(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open grid function file, expected at " + path.string());
    return read_grid_function(is);
}

void write_grid_csv(std::ostream& os, const GridFunction& f) {
    const Grid& g = f.grid();
    if (g.dim() == 1) {
        os << "x,value\n";
        for (std::size_t i = 0; i < g.n(0); ++i)
            os << format_double(g.axis(0).coord(i)) << ',' << format_double(f[i]) << "\n";
        return;
    }
    os << "x,y,value\n";
    for (std::size_t i = 0; i < g.n(0); ++i)
        for (std::size_t j = 0; j < g.n(1); ++j)
            os << format_double(g.axis(0).coord(i)) << ',' << format_double(g.axis(1).coord(j)) << ','
               << format_double(f.at(i, j)) << "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

}  // namespace besov
