#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "besov/certifier.hpp"
#include "besov/constants.hpp"
#include "besov/corpus.hpp"
#include "doctest.h"

using namespace besov;

namespace {

const CertificateEntry& find(const std::vector<CertificateEntry>& es, const std::string& suffix) {
    for (const auto& e : es)
        if (e.name.size() >= suffix.size() && e.name.compare(e.name.size() - suffix.size(), suffix.size(), suffix) == 0) return e;
    FAIL("missing entry " << suffix);
    return es.front();
}

}  // namespace

TEST_CASE("entry arithmetic") {
    const auto e = make_entry("a", "x <= y", 1.0, 2.0, 0.0, "exact", "", {});
    CHECK(e.slack == kSlackFloor);
    CHECK(e.margin == doctest::Approx(2.0 * (1.0 + kSlackFloor) - 1.0));
    CHECK(e.pass);
    CHECK_FALSE(e.informative);

    // within slack still passes
    CHECK(make_entry("b", "", 1.01, 1.0, 0.02, "", "", {}).pass);
    CHECK_FALSE(make_entry("c", "", 1.03, 1.0, 0.02, "", "", {}).pass);

    const auto capped = make_entry("d", "", 1.0, 1.0, 0.2, "", "", {});
    CHECK(capped.slack == kSlackCap);
    CHECK(capped.informative);
    CHECK(capped.inputs["informative_reason"] == "slack above cap");

    const auto forced = make_entry("e", "", 1.0, 1.0, 0.0, "", "lower vs lower", {});
    CHECK(forced.informative);

    CHECK(measured_slack(1.0, 2.0, 1.0, 2.0) == kSlackFloor);
    CHECK(measured_slack(1.0, 2.0, 1.1, 2.1) == doctest::Approx(0.2));
    CHECK(measured_slack(0.0, 0.0, 0.0, 0.0) == kSlackFloor);

    const auto j = to_json(e);
    for (const char* k : {"name", "paper_ref", "lhs", "rhs", "slack", "margin", "pass", "informative", "inputs"}) CHECK(j.contains(k));
}

TEST_CASE("violations are reported") {
    std::vector<CertificateEntry> es{make_entry("ok", "", 1.0, 2.0, 0.0, "", "", {}),
                                     make_entry("bad", "", 3.0, 2.0, 0.0, "", "", {})};
    CHECK_FALSE(certificates_hold(es));
    const auto s = summarize(es);
    CHECK(s.total == 2);
    CHECK(s.failed == 1);
    // an informative failure does not count
    es[1] = make_entry("bad", "", 3.0, 2.0, 0.0, "", "lower vs lower", {});
    CHECK(certificates_hold(es));
    CHECK(summarize(es).informative == 1);
}

TEST_CASE("indicator lebesgue suite") {
    const auto f = build_corpus("indicator", default_grid(1));
    const auto es = certify_lebesgue_suite(f, "indicator", 1.0, 1.0);
    const auto& lower = find(es, "lower-arm");
    CHECK(lower.lhs == doctest::Approx(2.0).epsilon(0.02));
    CHECK(lower.rhs >= 1.9);
    CHECK(lower.pass);
    CHECK_FALSE(lower.informative);
    CHECK(find(es, "upper-arm").pass);
    CHECK(find(es, "heat-deviation-by-seminorm").inputs["t_checked"] == 64);
    CHECK(find(es, "heat-deviation-by-seminorm").inputs["t_passed"] == 64);
    CHECK(find(es, "u-by-v").informative);
    CHECK(certificates_hold(es));
    for (const auto& e : es) CHECK(e.slack_measured <= kSlackCap);
}

TEST_CASE("zero function certifies trivially") {
    const auto f = build_corpus("zero", default_grid(1));
    for (const auto& e : certify_lebesgue_suite(f, "zero", 2.0, 0.5)) {
        CHECK(e.lhs == 0.0);
        CHECK(e.pass);
    }
}

TEST_CASE("gaussian poincare for the identity") {
    const auto f = build_corpus("x", default_grid(1));
    const auto es = certify_gaussian_suite(f, "x", 2.0, 1.0);
    const auto& p = find(es, "poincare");
    CHECK(std::abs(p.lhs - 1.0) <= 1e-4);
    CHECK(std::abs(p.rhs - std::numbers::pi / 2.0) <= 1e-3);
    CHECK(p.pass);
    CHECK_FALSE(p.informative);
    CHECK(certificates_hold(es));
    // no hll entry for p = 2
    for (const auto& e : es) CHECK(e.name.find("/hll") == std::string::npos);
}

TEST_CASE("hll entry runs for zero-mean p = 1") {
    const auto f = build_corpus("hermite(2)", default_grid(1));
    const auto es = certify_gaussian_suite(f, "hermite(2)", 1.0, 0.5);
    const auto& h = find(es, "hll");
    CHECK(h.pass);
    CHECK(h.inputs.contains("kantorovich"));
}

TEST_CASE("embedding entry") {
    const auto c = hermite_project(build_corpus("hermite(1)", default_grid(1)), 32);
    const auto e = certify_embedding_p2(c, "hermite(1)", 0.5);
    CHECK(e.rhs == doctest::Approx(embedding_constant(2.0, 0.5) * std::pow(2.0, 0.25)).epsilon(1e-5));
    CHECK(e.pass);
    CHECK(e.lhs > 0.0);
}

TEST_CASE("certify_all is sorted, unique and reproducible") {
    CertifyPlan plan;
    plan.lebesgue_1d = {"hat"};
    plan.gaussian_1d = {"x"};
    plan.embedding = {"hermite(1)"};
    plan.alphas = {0.5};
    plan.ps = {1.0};
    plan.embedding_alphas = {0.5};
    const auto a = certify_all(plan, {}, {1});
    const auto b = certify_all(plan, {}, {1});
    REQUIRE(a.size() == b.size());
    std::set<std::string> names;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
        names.insert(a[i].name);
        if (i) CHECK(a[i - 1].name < a[i].name);
    }
    CHECK(names.size() == a.size());
    CHECK(certificates_hold(a));
}

TEST_CASE("inadmissible smoothness is skipped") {
    CertifyPlan plan;
    plan.lebesgue_1d = {"indicator"};
    plan.gaussian_1d = {};
    plan.embedding = {};
    plan.ps = {2.0};
    plan.alphas = {1.0};
    CHECK(certify_all(plan, {}, {1}).empty());
}

TEST_CASE("refining the grid keeps passing entries passing") {
    const Grid coarse(Axis{-8.0, 8.0, 2049});
    const Grid fine = default_grid(1);
    for (const char* name : {"indicator", "hat"}) {
        const auto a = certify_lebesgue_suite(build_corpus(name, coarse), name, 1.0, 0.5);
        const auto b = certify_lebesgue_suite(build_corpus(name, fine), name, 1.0, 0.5);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].pass && !a[i].informative) CHECK_MESSAGE(b[i].pass, b[i].name);
    }
}
