#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "besov/cli.hpp"
#include "besov/config.hpp"
#include "besov/corpus.hpp"
#include "besov/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace besov;
namespace fs = std::filesystem;

namespace {

std::string cli() {
    const char* p = std::getenv("BESOV_CLI");
    return p ? p : "";
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("besov_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

struct Outcome {
    int status = -1;
    std::string err;
};

Outcome invoke(const std::string& args, const fs::path& dir) {
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = "'" + cli() + "' " + args + " > '" + (dir / "stdout.txt").string() + "' 2> '" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    Outcome o;
    o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream is(err);
    std::stringstream ss;
    ss << is.rdbuf();
    o.err = ss.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

}  // namespace

TEST_CASE("config parsing and validation") {
    const auto kv = parse_key_values("# comment\n\n ps = 1, 2 \ncorpus = hermite(1,1), xy\nps=2\n");
    CHECK(kv.at("ps") == "2");
    const auto c = make_run_config("seminorm", kv, {{"dim", "2"}});
    CHECK(c.corpus == std::vector<std::string>{"hermite(1,1)", "xy"});
    CHECK(c.ps == std::vector<double>{2.0});
    CHECK(c.dim == 2);

    auto field_of = [](auto&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            return e.field();
        }
        return std::string("no error");
    };
    CHECK(field_of([] { make_run_config("seminorm", {{"alphas", "0"}}, {}); }) == "alphas");
    CHECK(field_of([] { make_run_config("seminorm", {{"ps", "0.5"}}, {}); }) == "ps");
    CHECK(field_of([] { make_run_config("seminorm", {{"colour", "red"}}, {}); }) == "colour");
    CHECK(field_of([] { make_run_config("seminorm", {{"corpus", "banana"}}, {}); }) == "corpus");
    CHECK(field_of([] { make_run_config("seminorm", {{"grid.x", "-1,1,100"}}, {}); }) == "grid.x");
    CHECK(field_of([] { make_run_config("seminorm", {{"t_min", "1"}, {"t_max", "0.5"}}, {}); }) == "t_max");
    CHECK(field_of([] { make_run_config("seminorm", {{"seed", "x"}}, {}); }) == "seed");
    CHECK(field_of([] { make_run_config("counterexample", {{"counterexample.n_list", "100,10"}}, {}); }) ==
          "counterexample.n_list");
    CHECK(field_of([] { make_run_config("plot", {}, {}); }) == "subcommand");
    CHECK_THROWS_AS(parse_key_values("no equals sign"), ConfigError);
    CHECK_THROWS_AS(parse_overrides({"=3"}), ConfigError);
}

TEST_CASE("override precedence and echo") {
    const KeyValues file{{"out_dir", "from_file"}, {"alphas", "0.25"}};
    CHECK(make_run_config("corpus", file, {}).out_dir == "from_file");
    CHECK(make_run_config("corpus", file, {}, "from_env").out_dir == "from_env");
    const auto c = make_run_config("corpus", file, {{"out_dir", "from_cli"}, {"alphas", "0.5"}}, "from_env");
    CHECK(c.out_dir == "from_cli");
    CHECK(c.alphas == std::vector<double>{0.5});
    // the output location is not part of the echo
    CHECK(c.echo() == make_run_config("corpus", {{"alphas", "0.5"}}, {}).echo());
    CHECK(c.echo()["seed"] == 20240611);
}

TEST_CASE("artifact names") {
    CHECK(artifact_stem("hermite(1,1)") == "hermite_1_1");
    CHECK(artifact_stem("x+y^2") == "x_y_2");
    CHECK(artifact_stem("weierstrass(0.5)") == "weierstrass_0.5");
    CHECK(corpus_file("d", "indicator", 2) == "d/indicator_2d.grid");
}

TEST_CASE("corpus twice gives byte-identical files") {
    REQUIRE(!cli().empty());
    const auto a = scratch("corpus_a"), b = scratch("corpus_b");
    CHECK(invoke("corpus -o '" + (a / "out").string() + "'", a).status == 0);
    CHECK(invoke("corpus -o '" + (b / "out").string() + "'", b).status == 0);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a / "out")) {
        const fs::path other = b / "out" / e.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(e.path()) == slurp(other));
        ++files;
    }
    CHECK(files >= 10);
    // grid files carry a provenance header and still load
    const auto f = load_grid_function(a / "out" / "indicator_1d.grid");
    const auto g = build_corpus("indicator", f.grid());
    CHECK(f.values() == g.values());
    CHECK(slurp(a / "out" / "indicator_1d.grid").rfind("# besov ", 0) == 0);
    const auto j = load_json(a / "out" / "corpus.json");
    CHECK(j["besov_version"] == kVersion);
    CHECK(j["config"]["seed"] == 20240611);
}

TEST_CASE("seminorm of the zero function is zero") {
    const auto d = scratch("zero");
    const auto o = invoke("seminorm corpus=zero ps=1,2 alphas=0.5 -o '" + d.string() + "'", d);
    REQUIRE(o.status == 0);
    const auto j = load_json(d / "seminorm.json");
    REQUIRE(j["reports"].size() == 2);
    for (const auto& r : j["reports"]) {
        CHECK(r["estimate"]["value"] == 0.0);
        CHECK(r["u"]["value"] == 0.0);
        CHECK(r["witness"]["quotient"] == 0.0);
    }
}

TEST_CASE("seminorm reads a corpus directory") {
    const auto d = scratch("dir");
    REQUIRE(invoke("corpus corpus=indicator -o '" + (d / "c").string() + "'", d).status == 0);
    const auto ok = invoke("seminorm corpus=indicator ps=1 alphas=1 budget=0 corpus_dir='" + (d / "c").string() + "' -o '" +
                               (d / "s").string() + "'",
                           d);
    REQUIRE(ok.status == 0);
    const auto j = load_json(d / "s" / "seminorm.json");
    CHECK(j["reports"][0]["estimate"]["value"] == doctest::Approx(2.0).epsilon(0.02));

    const auto missing = invoke("seminorm corpus=hat corpus_dir='" + (d / "c").string() + "'", d);
    CHECK(missing.status == kExitConfigError);
    CHECK(missing.err.find((d / "c" / "hat_1d.grid").string()) != std::string::npos);
}

TEST_CASE("configuration errors exit with status 2 and name the field") {
    const auto d = scratch("bad");
    auto bad = invoke("seminorm alphas=1.5", d);
    CHECK(bad.status == kExitConfigError);
    CHECK(bad.err.find("alphas") != std::string::npos);

    bad = invoke("certify warp=9", d);
    CHECK(bad.status == kExitConfigError);
    CHECK(bad.err.find("warp") != std::string::npos);

    std::ofstream(d / "run.cfg") << "# bad file\nps = 1, zero\n";
    bad = invoke("corpus -c '" + (d / "run.cfg").string() + "'", d);
    CHECK(bad.status == kExitConfigError);
    CHECK(bad.err.find("ps") != std::string::npos);

    bad = invoke("corpus -c '" + (d / "absent.cfg").string() + "'", d);
    CHECK(bad.status == kExitConfigError);
    CHECK(bad.err.find("absent.cfg") != std::string::npos);

    CHECK(invoke("", d).status == kExitConfigError);
    CHECK(invoke("frobnicate", d).status == kExitConfigError);
}

TEST_CASE("environment picks the output directory") {
    const auto d = scratch("env");
    const std::string cmd = "BESOV_OUT_DIR='" + (d / "env_out").string() + "' '" + cli() + "' corpus corpus=zero > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(d / "env_out" / "zero_1d.grid"));
}

TEST_CASE("certify on a small plan") {
    const auto d = scratch("certify");
    const auto o = invoke("certify corpus=x dims=1 ps=2 alphas=1 -o '" + d.string() + "'", d);
    CHECK(o.status == 0);
    const auto j = load_json(d / "certificates.json");
    const auto& e = j["entries"];
    REQUIRE(e.size() >= 4);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["summary"]["total"] == e.size());
    for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i - 1]["name"].get<std::string>() < e[i]["name"].get<std::string>());
    bool poincare = false;
    for (const auto& x : e)
        if (x["name"] == "gaussian-1d/x/p=2/alpha=1/poincare") {
            poincare = true;
            CHECK(x["lhs"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
            CHECK(x["pass"] == true);
        }
    CHECK(poincare);
}
