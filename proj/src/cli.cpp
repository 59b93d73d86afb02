#include "besov/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "besov/certifier.hpp"
#include "besov/corpus.hpp"
#include "besov/counterexample.hpp"
#include "besov/heat.hpp"
#include "besov/io.hpp"
#include "besov/measure.hpp"
#include "besov/ou.hpp"
#include "besov/seminorms.hpp"

namespace besov {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

json provenance(const RunConfig& c) { return {{"besov_version", kVersion}, {"config", c.echo()}}; }

std::string comment_header(const RunConfig& c) {
    return std::string("# besov ") + kVersion + "\n# config " + c.echo().dump() + "\n";
}

class Writer {
public:
    Writer(const RunConfig& c, std::ostream& log) : c_(c), log_(log), root_(c.out_dir) {}

    void json_file(const std::string& rel, json body) {
        json j = provenance(c_);
        for (auto& [k, v] : body.items()) j[k] = std::move(v);
        put(rel, j.dump(2) + "\n");
    }
    void csv_file(const std::string& rel, const std::string& body) { put(rel, comment_header(c_) + body); }
    void grid_file(const std::string& rel, const GridFunction& f) {
        std::ostringstream os;
        os << comment_header(c_);
        write_grid_function(os, f);
        put(rel, os.str());
    }

private:
    void put(const std::string& rel, const std::string& content) {
        const fs::path p = root_ / rel;
        write_text_file(p, content);
        log_ << p.string() << "\n";
    }
    const RunConfig& c_;
    std::ostream& log_;
    fs::path root_;
};

std::vector<std::string> default_selection(int dim) {
    if (dim == 1) return {"indicator", "hat", "gauss_bump", "weierstrass", "zero", "one", "x", "hermite(2)", "hermite(3)"};
    return {"indicator", "gauss_bump", "zero", "one", "xy", "x+y^2", "hermite(1,1)"};
}

std::vector<std::string> selection(const RunConfig& c) {
    if (c.corpus.empty()) return default_selection(c.dim);
    for (const auto& n : c.corpus)
        if (!corpus_supports_dim(n, c.dim))
            throw ConfigError("corpus", "'" + n + "' has no " + std::to_string(c.dim) + "D form");
    return c.corpus;
}

std::string curve_csv(const std::vector<double>& t, const std::vector<double>& v) {
    SemigroupCurve c;
    for (std::size_t i = 0; i < t.size(); ++i) c.push(t[i], v[i]);
    std::ostringstream os;
    c.write_csv(os);
    return os.str();
}

json witness_json(const QuotientWitness& w) {
    return {{"quotient", w.quotient},       {"numerator", w.numerator}, {"norm_field", w.norm_field},
            {"norm_div", w.norm_div},       {"construction", w.construction}, {"seed", w.seed},
            {"direction", "lower bound on V"}};
}

json estimate_json(const BesovEstimate& e) {
    return {{"value", e.value},
            {"witness_h", {e.witness_h[0], e.witness_h[1]}},
            {"kind", e.kind},
            {"cap_limited", e.cap_limited},
            {"shifts", e.profile.size()},
            {"direction", "grid lower bound on the seminorm"}};
}

int run_corpus(const RunConfig& c, Writer& w) {
    const Grid g = c.grid(c.dim);
    json files = json::array();
    for (const auto& name : selection(c)) {
        const GridFunction f = build_corpus(name, g);
        const std::string rel = fs::path(corpus_file("", name, c.dim)).filename().string();
        w.grid_file(rel, f);
        files.push_back({{"name", name}, {"file", rel}, {"measure", to_string(f.measure())}, {"samples", f.size()},
                         {"l1", lp_norm(f, 1.0)}, {"l2", lp_norm(f, 2.0)}, {"sup", max_abs(f)}});
    }
    w.json_file("corpus.json", {{"dim", c.dim}, {"functions", files}});
    return kExitPass;
}

int run_seminorm(const RunConfig& c, Writer& w) {
    json reports = json::array();
    const auto T = c.t_grid();
    for (const auto& name : selection(c)) {
        const GridFunction f = corpus_function(c, name, c.dim);
        const bool leb = f.measure() == Measure::lebesgue;
        const auto hs = default_shift_grid(f.grid(), c.h_count);
        for (double p : c.ps)
            for (double a : c.alphas) {
                json r{{"function", name}, {"dim", c.dim}, {"measure", to_string(f.measure())}, {"p", p}, {"alpha", a},
                       {"admissible", a <= corpus_alpha_limit(name, p) + 1e-12}};
                if (leb) r["estimate"] = estimate_json(besov_seminorm(f, p, a, hs));
                const SupEstimate u = leb ? u_functional_refined(f, p, a, T) : u_gamma_functional_refined(f, p, a, T);
                r["u"] = {{"value", u.value}, {"argmax_t", u.argmax}, {"direction", "grid lower bound on U"}};
                WitnessOptions wo;
                wo.budget = c.budget;
                wo.seed = c.seed;
                r["witness"] = witness_json(v_lower_bound(f, p, a, wo));
                reports.push_back(std::move(r));
            }
    }
    w.json_file("seminorm.json", {{"reports", reports}});
    return kExitPass;
}

int run_semigroup(const RunConfig& c, Writer& w) {
    json out = json::array();
    const auto T = c.t_grid();
    for (const auto& name : selection(c)) {
        const GridFunction f = corpus_function(c, name, c.dim);
        const bool leb = f.measure() == Measure::lebesgue;
        const SemigroupProfile prof = leb ? heat_profile(f, T, c.ps) : ou_profile(f, T, c.ps);
        const std::string stem = artifact_stem(name) + "_" + std::to_string(c.dim) + "d";
        json item{{"function", name}, {"semigroup", leb ? "heat" : "ornstein-uhlenbeck"}, {"curves", json::array()}};
        for (double p : c.ps) {
            const std::size_t i = prof.p_index(p);
            const std::string base = "semigroup/" + stem + "_p" + fmt_g(p);
            w.csv_file(base + "_deviation.csv", curve_csv(prof.t, prof.deviation[i]));
            w.csv_file(base + "_gradient.csv", curve_csv(prof.t, prof.grad_norm[i]));
            json us = json::array();
            for (double a : c.alphas) {
                const SupEstimate u = leb ? u_functional_refined(f, p, a, prof) : u_gamma_functional_refined(f, p, a, prof);
                us.push_back({{"alpha", a}, {"value", u.value}, {"argmax_t", u.argmax}});
            }
            item["curves"].push_back({{"p", p},
                                      {"deviation_csv", base + "_deviation.csv"},
                                      {"gradient_csv", base + "_gradient.csv"},
                                      {"u", us}});
        }
        out.push_back(std::move(item));
    }
    w.json_file("semigroup.json", {{"functions", out}});
    return kExitPass;
}

std::vector<std::string> filtered(const std::vector<std::string>& names, const std::vector<std::string>& keep) {
    if (keep.empty()) return names;
    std::vector<std::string> out;
    for (const auto& n : names)
        if (std::find(keep.begin(), keep.end(), n) != keep.end()) out.push_back(n);
    return out;
}

int run_certify(const RunConfig& c, Writer& w) {
    CertifyPlan plan;
    plan.lebesgue_1d = filtered(plan.lebesgue_1d, c.corpus);
    plan.lebesgue_2d = filtered(plan.lebesgue_2d, c.corpus);
    plan.gaussian_1d = filtered(plan.gaussian_1d, c.corpus);
    plan.gaussian_2d = filtered(plan.gaussian_2d, c.corpus);
    plan.embedding = filtered(plan.embedding, c.corpus);
    plan.ps = c.ps;
    plan.alphas = c.alphas;
    CertifyOptions opt;
    opt.budget = c.budget;
    opt.seed = c.seed;
    opt.t_grid = c.t_grid();
    opt.h_count = c.h_count;
    const auto entries = certify_all(plan, opt, c.dims);
    const auto s = summarize(entries);
    json arr = json::array();
    for (const auto& e : entries) arr.push_back(to_json(e));
    w.json_file("certificates.json",
                {{"summary", {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}, {"informative", s.informative}}},
                 {"entries", arr}});
    return certificates_hold(entries) ? kExitPass : kExitCertificateFailure;
}

int run_counterexample(const RunConfig& c, Writer& w) {
    const auto& Ns = c.ce_n_list;
    const auto rows = slice_blowup_study(c.ce_alpha, Ns, c.ce_y_samples, c.ce_k_start);

    std::string csv = "y,N,k_star,value,argmax,expected\n";
    for (const auto& r : rows)
        csv += format_double(r.y) + "," + std::to_string(r.N) + "," + std::to_string(r.k_star) + "," +
               format_double(r.value) + "," + std::to_string(r.argmax) + "," + format_double(r.expected) + "\n";
    w.csv_file("counterexample/blowup.csv", csv);

    // growth between consecutive N at each y, and agreement with pi sqrt(ln k*) where covered
    const std::size_t m = Ns.size();
    std::size_t covered = 0, matched = 0, increased = 0;
    double worst_rel = 0.0;
    for (std::size_t j = 0; j < c.ce_y_samples; ++j) {
        const SliceBlowupRow& first = rows[j * m];
        const SliceBlowupRow& last = rows[j * m + m - 1];
        if (m > 1 && last.value > first.value * (1.0 + 1e-12)) ++increased;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& r = rows[j * m + i];
            if (r.k_star == 0) continue;
            ++covered;
            const double rel = std::abs(r.value - r.expected) / r.expected;
            worst_rel = std::max(worst_rel, rel);
            if (rel <= 0.02) ++matched;
        }
    }

    // k^a a_k(y) at the first sampled y for each N
    const double y0 = rows.front().y;
    json profiles = json::array();
    for (std::size_t N : Ns) {
        const auto spec = make_counterexample_spec(c.ce_alpha, N, c.ce_k_start);
        std::size_t nodes = 16;
        while (nodes < 8 * N) nodes *= 2;
        const auto a = slice_coefficients(counterexample_slice(spec, y0, Axis{0.0, 2.0 * std::numbers::pi, nodes + 1}), y0, N);
        std::string pc = "k,value\n";
        for (std::size_t k = 1; k <= a.size(); ++k)
            pc += std::to_string(k) + "," + format_double(std::pow(static_cast<double>(k), c.ce_alpha) * a[k - 1]) + "\n";
        const std::string rel = "counterexample/slice_profile_N" + std::to_string(N) + ".csv";
        w.csv_file(rel, pc);
        profiles.push_back({{"N", N}, {"y", y0}, {"csv", rel}});
    }

    const auto spec_max = make_counterexample_spec(c.ce_alpha, Ns.back(), c.ce_k_start);
    const auto scan = directional_bound_scan(spec_max, default_test_family(), Ns);
    std::string sc = "N,max_quotient\n";
    json scan_json = json::array();
    for (const auto& r : scan) {
        sc += std::to_string(r.N) + "," + format_double(r.max_quotient) + "\n";
        scan_json.push_back({{"N", r.N}, {"max_quotient", r.max_quotient}, {"argmax", r.argmax}});
    }
    w.csv_file("counterexample/directional_scan.csv", sc);
    const double q0 = scan.front().max_quotient, q1 = scan.back().max_quotient;
    const double change = q0 > 0.0 ? std::abs(q1 - q0) / q0 : 0.0;

    json specs = json::array();
    for (std::size_t N : Ns) specs.push_back(to_json(make_counterexample_spec(c.ce_alpha, N, c.ce_k_start)));
    w.json_file("counterexample.json",
                {{"specs", specs},
                 {"slices",
                  {{"y_samples", c.ce_y_samples},
                   {"increased_first_to_last_N", increased},
                   {"covered_rows", covered},
                   {"matched_within_2pct", matched},
                   {"worst_relative_error", worst_rel},
                   {"csv", "counterexample/blowup.csv"},
                   {"profiles", profiles}}},
                 {"directional", {{"rows", scan_json}, {"relative_change_first_to_last_N", change},
                                  {"csv", "counterexample/directional_scan.csv"}}}});
    return kExitPass;
}

std::string holder_csv(const HolderProfile& h) { return curve_csv(h.curve.t, h.curve.value); }

json fit_json(const HolderFit& f) {
    return {{"exponent", f.exponent}, {"constant", f.constant}, {"constant_alpha", f.constant_alpha},
            {"t_lo", f.t_lo}, {"t_hi", f.t_hi}, {"residual", f.residual},
            {"range", "constants hold on the sampled t range only"}};
}

int run_measure(const RunConfig& c, Writer& w) {
    const Grid g = c.grid(1);
    const auto T = log_grid(1e-3, 1.0, 40);
    const GridMeasure gauss = gaussian_measure(g);

    json shifts = json::array();
    for (double t : {0.1, 0.25, 0.5, 1.0}) {
        const double tv = tv_distance(shift_measure(gauss, {t, 0.0}), gauss);
        const double exact = 2.0 * std::erf(t / (2.0 * std::numbers::sqrt2));  // 2 (2 Phi(t/2) - 1)
        shifts.push_back({{"t", t}, {"tv", tv}, {"closed_form", exact}, {"abs_error", std::abs(tv - exact)}});
    }

    json profiles;
    auto profile = [&](const std::string& key, const GridMeasure& mu, std::optional<double> a) {
        const auto h = holder_profile(mu, {1.0, 0.0}, T, a);
        const std::string rel = "measure/holder_" + key + ".csv";
        w.csv_file(rel, holder_csv(h));
        profiles[key] = {{"fit", fit_json(h.fit)}, {"csv", rel}};
    };
    profile("gaussian", gauss, 1.0);
    profile("uniform", uniform_measure(g, 0.0, 1.0), std::nullopt);
    profile("point", point_mass(g, 0.0), std::nullopt);

    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Vec2> hs;
    for (int i = 0; i < 6; ++i) hs.push_back({u(rng), 0.0});
    const auto metric = metric_axioms_check(gauss, hs, 0.5, log_grid(1e-2, 1.0, 12));

    // product Gaussian, and 1 + eps f for a grid-resolvable truncation of the counterexample
    const auto prod = conditional_slices(gaussian_measure(Grid(Axis{-6.0, 6.0, 769}, Axis{-2.0, 2.0, 9})), 0);
    const auto ce = build_counterexample(make_counterexample_spec(c.ce_alpha, 64, c.ce_k_start), counterexample_grid());
    GridFunction dens = ce.f;
    const double eps = 0.5 / max_abs(ce.f);
    for (double& v : dens.values()) v = 1.0 + eps * v;
    const auto ce_slices = conditional_slices(measure_from_density(dens), 0);

    json chaining = json::array();
    for (double b : c.betas) {
        chaining.push_back({{"measure", "product-gaussian"}, {"report", to_json(chaining_check(prod, b, c.chaining_depth))}});
        chaining.push_back({{"measure", "counterexample-density"},
                            {"density", {{"N", 64}, {"eps", eps}, {"alpha", c.ce_alpha}}},
                            {"report", to_json(chaining_check(ce_slices, b, c.chaining_depth))}});
    }
    w.json_file("measure.json",
                {{"gaussian_shift_tv", shifts}, {"holder", profiles}, {"metric", to_json(metric)}, {"chaining", chaining}});
    return kExitPass;
}

}  // namespace

std::string artifact_stem(std::string_view name) {
    std::string s;
    for (char ch : name) {
        const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.';
        if (keep)
            s += ch;
        else if (!s.empty() && s.back() != '_')
            s += '_';
    }
    while (!s.empty() && s.back() == '_') s.pop_back();
    return s;
}

std::string corpus_file(const std::string& dir, std::string_view name, int dim) {
    return (fs::path(dir) / (artifact_stem(name) + "_" + std::to_string(dim) + "d.grid")).string();
}

GridFunction corpus_function(const RunConfig& c, const std::string& name, int dim) {
    if (c.corpus_dir.empty()) return build_corpus(name, c.grid(dim));
    const std::string path = corpus_file(c.corpus_dir, name, dim);
    if (!fs::exists(path))
        throw ConfigError("corpus_dir", "no corpus file for '" + name + "'; expected at " + path +
                                            " (write it with the corpus subcommand)");
    GridFunction f = load_grid_function(path);
    if (f.grid().dim() != dim) throw ConfigError("corpus_dir", path + " holds a " + std::to_string(f.grid().dim()) + "D function");
    return f;
}

int run(const RunConfig& config, std::ostream& log) {
    Writer w(config, log);
    const std::string& s = config.subcommand;
    if (s == "corpus") return run_corpus(config, w);
    if (s == "seminorm") return run_seminorm(config, w);
    if (s == "semigroup") return run_semigroup(config, w);
    if (s == "certify") return run_certify(config, w);
    if (s == "counterexample") return run_counterexample(config, w);
    if (s == "measure") return run_measure(config, w);
    throw ConfigError("subcommand", "unknown subcommand '" + s + "'");
}

}  // namespace besov
