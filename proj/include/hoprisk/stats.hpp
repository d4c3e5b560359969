#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoprisk/pmf.hpp"
#include "hoprisk/simulation.hpp"

namespace hoprisk {

struct TypeMoments {
    double mean = 0.0;
    double sd = 0.0;
    double mean_proportion = 0.0;  // mean / N_i
    double sd_proportion = 0.0;
};

struct MomentSummary {
    std::vector<TypeMoments> types;
};

// Exact moments of each margin (population SD).
MomentSummary marginal_moments(const JointPmf& pmf);
// Sample mean and unbiased SD at `depth`; SD is 0 for a single run.
MomentSummary marginal_moments(const SampleMatrix& samples, int depth);

// Each measure is empty when a margin is constant.
struct DependenceSummary {
    std::optional<double> pearson;
    std::optional<double> kendall;   // tau-b
    std::optional<double> spearman;  // Pearson of average ranks
};

struct PairDependence {
    std::size_t first = 0;
    std::size_t second = 0;
    DependenceSummary measures;
};

// Sample estimators on paired non-negative count vectors of equal length >= 2.
std::optional<double> pearson(std::span<const int> x, std::span<const int> y);
std::optional<double> kendall_tau_b(std::span<const int> x, std::span<const int> y);
std::optional<double> spearman_rho(std::span<const int> x, std::span<const int> y);
DependenceSummary dependence(std::span<const int> x, std::span<const int> y);

// All type pairs (i < j) at `depth`. Needs M >= 2 and at least two runs.
std::vector<PairDependence> correlations(const SampleMatrix& samples, int depth);
// Population counterparts computed from the PMF: Kendall's tau-b from
// concordance probabilities, Spearman from mid-distribution ranks.
std::vector<PairDependence> correlations(const JointPmf& pmf);

// P(X_1 > x_1, ..., X_M > x_M); each x_i in -1..N_i.
double upper_orthant_survival(const JointPmf& pmf, std::span<const int> x);
// P(X_1 <= x_1, ..., X_M <= x_M); each x_i in -1..N_i.
double lower_orthant_cdf(const JointPmf& pmf, std::span<const int> x);

enum class OrthantKind { upper_survival, lower_cdf };

struct OrthantViolation {
    std::vector<int> point;
    OrthantKind kind = OrthantKind::upper_survival;
    double magnitude = 0.0;
};

struct OrderReport {
    std::string claim;  // e.g. "lo <=_st hi (orthant conditions)"
    std::vector<OrthantViolation> violations;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed = true;
};

// Checks the orthant conditions implied by lo <=_st hi: at every point the
// upper-orthant survival of hi is at least that of lo, and the lower-orthant
// CDF of hi is at most that of lo, both up to `tol`. These are necessary,
// not sufficient, for the usual multivariate stochastic order.
OrderReport check_orthant_monotone(const JointPmf& lo, const JointPmf& hi, double tol);

std::string format_report(const OrderReport& report);

}  // namespace hoprisk
