#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "besov/grid.hpp"
#include "besov/hermite.hpp"
#include "json.hpp"

namespace besov {

inline constexpr double kSlackFloor = 1e-4;
inline constexpr double kSlackCap = 0.05;
// Absolute allowance on the margin. Corpus norms are of unit order, so exact zeros come back as float noise.
inline constexpr double kRoundoff = 1e-12;

struct CertificateEntry {
    std::string name;
    std::string paper_ref;  // the inequality being checked, in words
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = kSlackFloor;  // multiplicative allowance applied to rhs
    double slack_measured = kSlackFloor;
    double margin = 0.0;  // rhs (1 + slack) - lhs
    bool pass = true;
    bool informative = false;
    std::string direction;  // how lhs and rhs relate to the true quantities
    nlohmann::json inputs = nlohmann::json::object();
};

nlohmann::json to_json(const CertificateEntry& e);

struct CertifyOptions {
    int budget = 20;
    std::uint64_t seed = 20240611;
    std::vector<double> t_grid;  // empty: default heat/ou grid
    std::size_t h_count = 40;
    bool coarse_slack = true;  // estimate slack by repeating on the grid with every other node
};

// Builds an entry; slack is the measured discretization slack, informative_reason non-empty forces informative.
CertificateEntry make_entry(std::string name, std::string paper_ref, double lhs, double rhs, double slack_measured,
                            std::string direction, std::string informative_reason, nlohmann::json inputs);

// 2 (|lhs - lhs_coarse| + |rhs - rhs_coarse|) / rhs, floored.
double measured_slack(double lhs, double rhs, double lhs_coarse, double rhs_coarse);

std::vector<CertificateEntry> certify_lebesgue_suite(const GridFunction& f, std::string_view label, double p, double alpha,
                                                     const CertifyOptions& opt = {});
std::vector<CertificateEntry> certify_gaussian_suite(const GridFunction& f, std::string_view label, double p, double alpha,
                                                     const CertifyOptions& opt = {});
std::vector<CertificateEntry> certify_projection_suite(const GridFunction& f, std::string_view label, double p, double alpha,
                                                       const CertifyOptions& opt = {});
CertificateEntry certify_embedding_p2(const HermiteCoeffs& c, std::string_view label, double alpha,
                                      const CertifyOptions& opt = {});

struct CertifyPlan {
    std::vector<std::string> lebesgue_1d{"indicator", "hat", "gauss_bump", "weierstrass", "zero"};
    std::vector<std::string> lebesgue_2d{"indicator", "gauss_bump"};
    std::vector<std::string> gaussian_1d{"one", "x", "hermite(2)", "hermite(3)"};
    std::vector<std::string> gaussian_2d{"xy", "x+y^2", "hermite(1,1)"};
    std::vector<std::string> embedding{"hermite(0)", "hermite(1)", "hermite(4)"};
    std::vector<double> ps{1.0, 2.0};
    std::vector<double> alphas{0.25, 0.5, 1.0};
    std::vector<double> embedding_alphas{0.25, 0.5};
    std::size_t hermite_degrees = 64;
};

// All suites over the plan, sorted by name.
std::vector<CertificateEntry> certify_all(const CertifyPlan& plan, const CertifyOptions& opt = {},
                                          const std::vector<int>& dims = {1, 2});

struct CertifySummary {
    std::size_t total = 0, passed = 0, failed = 0, informative = 0;
};
CertifySummary summarize(const std::vector<CertificateEntry>& entries);
// True iff no non-informative entry fails.
bool certificates_hold(const std::vector<CertificateEntry>& entries);

}  // namespace besov
