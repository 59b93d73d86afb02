#include "besov/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "besov/corpus.hpp"
#include "besov/numerics.hpp"

namespace besov {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Commas inside parentheses belong to the item, as in hermite(1,1).
std::vector<std::string> split_list(const std::string& field, std::string_view s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ConfigError(field, "unbalanced parentheses in '" + std::string(s) + "'");
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw ConfigError(field, "unbalanced parentheses in '" + std::string(s) + "'");
    out.push_back(trim(cur));
    for (const auto& x : out)
        if (x.empty()) throw ConfigError(field, "empty item in list '" + std::string(s) + "'");
    return out;
}

double to_double(const std::string& field, const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ConfigError(field, "expected a finite number, got '" + s + "'");
    return v;
}

template <class Int>
Int to_int(const std::string& field, const std::string& s) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(field, "expected an integer, got '" + s + "'");
    return v;
}

std::vector<double> to_doubles(const std::string& field, const std::string& s) {
    std::vector<double> out;
    for (const auto& x : split_list(field, s)) out.push_back(to_double(field, x));
    return out;
}

Axis to_axis(const std::string& field, const std::string& s) {
    const auto parts = split_list(field, s);
    if (parts.size() != 3) throw ConfigError(field, "expected lo,hi,n");
    Axis a{to_double(field, parts[0]), to_double(field, parts[1]), to_int<std::size_t>(field, parts[2])};
    if (!(a.hi > a.lo)) throw ConfigError(field, "needs lo < hi");
    if (a.n < 3 || a.n % 2 == 0) throw ConfigError(field, "node count must be odd and at least 3 (grid doubling)");
    return a;
}

const std::vector<std::string> kKeys{
    "alphas", "budget", "corpus", "corpus_dir", "counterexample.alpha", "counterexample.k_start",
    "counterexample.n_list", "counterexample.y_samples", "dim", "dims", "grid.x", "grid.y", "h_count",
    "measure.betas", "measure.depth", "out_dir", "ps", "seed", "t_count", "t_max", "t_min"};

const std::set<std::string> kSubcommands{"corpus", "seminorm", "semigroup", "certify", "counterexample", "measure"};

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
}

}  // namespace

std::vector<std::string> config_keys() { return kKeys; }

KeyValues parse_key_values(std::string_view text, std::string_view origin) {
    KeyValues kv;
    std::istringstream is{std::string(text)};
    std::string line;
    for (std::size_t no = 1; std::getline(is, line); ++no) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        const std::string where = std::string(origin) + ":" + std::to_string(no);
        if (eq == std::string::npos) throw ConfigError(where, "expected key = value, got '" + t + "'");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ConfigError(where, "empty key");
        kv[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

KeyValues read_key_values(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config", "cannot read config file, expected at " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_key_values(ss.str(), path);
}

KeyValues parse_overrides(const std::vector<std::string>& tokens) {
    KeyValues kv;
    for (const auto& tok : tokens) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError(tok, "override must look like key=value");
        kv[trim(tok.substr(0, eq))] = trim(tok.substr(eq + 1));
    }
    return kv;
}

RunConfig make_run_config(std::string subcommand, const KeyValues& file, const KeyValues& overrides,
                          const char* env_out_dir) {
    if (!kSubcommands.contains(subcommand)) throw ConfigError("subcommand", "unknown subcommand '" + subcommand + "'");
    KeyValues kv = file;
    if (env_out_dir && *env_out_dir) kv["out_dir"] = env_out_dir;
    for (const auto& [k, v] : overrides) kv[k] = v;

    RunConfig c;
    c.subcommand = std::move(subcommand);
    for (const auto& [k, v] : kv) {
        if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) throw ConfigError(k, "unknown key");
        if (v.empty() && k != "corpus") throw ConfigError(k, "empty value");
    }
    auto has = [&](const char* k) { return kv.contains(k); };
    auto at = [&](const char* k) { return kv.at(k); };

    if (has("corpus") && !at("corpus").empty()) c.corpus = split_list("corpus", at("corpus"));
    for (const auto& name : c.corpus) {
        try {
            corpus_measure(name);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("corpus", e.what());
        }
    }
    if (has("corpus_dir")) c.corpus_dir = at("corpus_dir");
    if (has("dim")) c.dim = to_int<int>("dim", at("dim"));
    if (c.dim != 1 && c.dim != 2) throw ConfigError("dim", "must be 1 or 2");
    if (has("dims")) {
        c.dims.clear();
        for (const auto& x : split_list("dims", at("dims"))) c.dims.push_back(to_int<int>("dims", x));
    }
    for (int d : c.dims)
        if (d != 1 && d != 2) throw ConfigError("dims", "entries must be 1 or 2");
    std::sort(c.dims.begin(), c.dims.end());
    c.dims.erase(std::unique(c.dims.begin(), c.dims.end()), c.dims.end());
    if (has("grid.x")) c.grid_x = to_axis("grid.x", at("grid.x"));
    if (has("grid.y")) c.grid_y = to_axis("grid.y", at("grid.y"));

    if (has("ps")) c.ps = to_doubles("ps", at("ps"));
    for (double p : c.ps)
        if (!(p >= 1.0)) throw ConfigError("ps", "every p must be >= 1");
    if (has("alphas")) c.alphas = to_doubles("alphas", at("alphas"));
    for (double a : c.alphas)
        if (!(a > 0.0 && a <= 1.0)) throw ConfigError("alphas", "every alpha must lie in (0,1]");
    if (c.ps.empty()) throw ConfigError("ps", "empty list");
    if (c.alphas.empty()) throw ConfigError("alphas", "empty list");

    if (has("t_min")) c.t_min = to_double("t_min", at("t_min"));
    if (has("t_max")) c.t_max = to_double("t_max", at("t_max"));
    if (has("t_count")) c.t_count = to_int<std::size_t>("t_count", at("t_count"));
    if (!(c.t_min > 0.0)) throw ConfigError("t_min", "must be positive");
    if (!(c.t_max > c.t_min)) throw ConfigError("t_max", "must exceed t_min");
    if (c.t_count < 2) throw ConfigError("t_count", "must be at least 2");
    if (has("h_count")) c.h_count = to_int<std::size_t>("h_count", at("h_count"));
    if (c.h_count < 2) throw ConfigError("h_count", "must be at least 2");
    if (has("budget")) c.budget = to_int<int>("budget", at("budget"));
    if (c.budget < 0) throw ConfigError("budget", "must be nonnegative");
    if (has("seed")) c.seed = to_int<std::uint64_t>("seed", at("seed"));
    if (has("out_dir")) c.out_dir = at("out_dir");

    if (has("counterexample.alpha")) c.ce_alpha = to_double("counterexample.alpha", at("counterexample.alpha"));
    if (!(c.ce_alpha > 0.0 && c.ce_alpha < 1.0)) throw ConfigError("counterexample.alpha", "must lie in (0,1)");
    if (has("counterexample.k_start"))
        c.ce_k_start = to_int<std::size_t>("counterexample.k_start", at("counterexample.k_start"));
    if (c.ce_k_start < 2) throw ConfigError("counterexample.k_start", "must be at least 2");
    if (has("counterexample.n_list")) {
        c.ce_n_list.clear();
        for (const auto& x : split_list("counterexample.n_list", at("counterexample.n_list")))
            c.ce_n_list.push_back(to_int<std::size_t>("counterexample.n_list", x));
    }
    if (c.ce_n_list.empty()) throw ConfigError("counterexample.n_list", "empty list");
    for (std::size_t n : c.ce_n_list)
        if (n < c.ce_k_start) throw ConfigError("counterexample.n_list", "every N must be >= k_start");
    if (!std::is_sorted(c.ce_n_list.begin(), c.ce_n_list.end()))
        throw ConfigError("counterexample.n_list", "must be increasing");
    if (has("counterexample.y_samples"))
        c.ce_y_samples = to_int<std::size_t>("counterexample.y_samples", at("counterexample.y_samples"));
    if (c.ce_y_samples == 0) throw ConfigError("counterexample.y_samples", "must be positive");

    if (has("measure.betas")) c.betas = to_doubles("measure.betas", at("measure.betas"));
    for (double b : c.betas)
        if (!(b > 0.0 && b <= 1.0)) throw ConfigError("measure.betas", "every beta must lie in (0,1]");
    if (has("measure.depth")) c.chaining_depth = to_int<std::size_t>("measure.depth", at("measure.depth"));
    if (c.chaining_depth < 1 || c.chaining_depth > 20) throw ConfigError("measure.depth", "must lie in [1,20]");
    return c;
}

nlohmann::json RunConfig::echo() const {
    auto axis = [](const std::optional<Axis>& a) -> nlohmann::json {
        if (!a) return "default";
        return nlohmann::json::array({a->lo, a->hi, a->n});
    };
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["corpus"] = corpus.empty() ? std::string("default") : join(corpus);
    j["corpus_dir"] = corpus_dir;
    j["dim"] = dim;
    j["dims"] = dims;
    j["grid.x"] = axis(grid_x);
    j["grid.y"] = axis(grid_y);
    j["ps"] = ps;
    j["alphas"] = alphas;
    j["t_min"] = t_min;
    j["t_max"] = t_max;
    j["t_count"] = t_count;
    j["h_count"] = h_count;
    j["budget"] = budget;
    j["seed"] = seed;
    j["counterexample.alpha"] = ce_alpha;
    j["counterexample.n_list"] = ce_n_list;
    j["counterexample.y_samples"] = ce_y_samples;
    j["counterexample.k_start"] = ce_k_start;
    j["measure.betas"] = betas;
    j["measure.depth"] = chaining_depth;
    return j;
}

std::vector<double> RunConfig::t_grid() const { return log_grid(t_min, t_max, t_count); }

Grid RunConfig::grid(int d) const {
    const Grid def = default_grid(d);
    const Axis x = grid_x.value_or(def.axis(0));
    if (d == 1) return Grid(x);
    return Grid(x, grid_y.value_or(grid_x.value_or(def.axis(1))));
}

}  // namespace besov
