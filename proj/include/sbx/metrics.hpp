#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "sbx/bitstring.hpp"

namespace sbx::metrics {

/// Empirical probability mass over observed complexity values.
struct ComplexityDistribution {
    std::vector<double> support; // strictly increasing
    std::vector<double> mass;    // nonnegative, sums to 1
    std::size_t trials = 0;
};

/// Right-continuous step CDF over the same support.
struct StepCdf {
    std::vector<double> support;
    std::vector<double> cumulative; // nondecreasing, ends at 1
};

struct CorrelationResult {
    double rho = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

ComplexityDistribution empirical_distribution(std::span<const double> scores);

StepCdf cdf(const ComplexityDistribution& dist);

/// Integral of the step CDF over [c_min, c_max]. Requires
/// c_min <= min(support) and c_max >= max(support).
double auc(const ComplexityDistribution& dist, double c_min, double c_max);

/// Fraction of distinct strings among the inputs. All strings must share
/// one length.
double expressivity(std::span<const BitString> functions);

/// Spearman rank correlation. Without ties this is the closed-form
/// 1 - 6*sum(d_i^2)/(n(n^2-1)); with ties, Pearson correlation of
/// average-ranked data. Two-sided p-value from the t approximation
/// t = rho*sqrt((n-2)/(1-rho^2)) against Student-t with n-2 dof.
CorrelationResult spearman(std::span<const double> x, std::span<const double> y);

/// (complexity, probability) rows, one per support point.
void write_distribution_csv(const ComplexityDistribution& dist, std::ostream& out);

namespace detail {
/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation. Used for the Student-t tail.
double regularized_incomplete_beta(double a, double b, double x);
std::vector<double> average_ranks(std::span<const double> values);
} // namespace detail

} // namespace sbx::metrics
