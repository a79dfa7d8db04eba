#include "sbx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace sbx::metrics {

ComplexityDistribution empirical_distribution(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("empirical_distribution: empty input");
    std::map<double, std::size_t> counts;
    for (double s : scores) ++counts[s];
    ComplexityDistribution dist;
    dist.trials = scores.size();
    dist.support.reserve(counts.size());
    dist.mass.reserve(counts.size());
    const double t = static_cast<double>(scores.size());
    for (const auto& [value, count] : counts) {
        dist.support.push_back(value);
        dist.mass.push_back(static_cast<double>(count) / t);
    }
    return dist;
}

static void validate(const ComplexityDistribution& dist) {
    if (dist.support.empty() || dist.support.size() != dist.mass.size())
        throw std::invalid_argument("distribution: empty or mismatched support/mass");
    double total = 0.0;
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        if (i > 0 && !(dist.support[i - 1] < dist.support[i]))
            throw std::invalid_argument("distribution: support not strictly increasing");
        if (dist.mass[i] < 0.0) throw std::invalid_argument("distribution: negative mass");
        total += dist.mass[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: mass does not sum to 1");
}

StepCdf cdf(const ComplexityDistribution& dist) {
    validate(dist);
    StepCdf out;
    out.support = dist.support;
    out.cumulative.resize(dist.mass.size());
    std::partial_sum(dist.mass.begin(), dist.mass.end(), out.cumulative.begin());
    return out;
}

double auc(const ComplexityDistribution& dist, double c_min, double c_max) {
    StepCdf f = cdf(dist);
    if (c_min > f.support.front() || c_max < f.support.back())
        throw std::invalid_argument("integration range excludes support");
    // F(x) = 0 on [c_min, support[0]); constant on each step interval.
    double area = 0.0;
    for (std::size_t i = 0; i < f.support.size(); ++i) {
        const double right = (i + 1 < f.support.size()) ? f.support[i + 1] : c_max;
        area += f.cumulative[i] * (right - f.support[i]);
    }
    return area;
}

double expressivity(std::span<const BitString> functions) {
    if (functions.empty()) throw std::invalid_argument("expressivity: empty input");
    const std::size_t len = functions.front().size();
    std::unordered_set<std::string> unique;
    unique.reserve(functions.size());
    for (const auto& f : functions) {
        if (f.size() != len) throw std::invalid_argument("expressivity: mixed lengths");
        unique.insert(f.packed_key());
    }
    return static_cast<double>(unique.size()) / static_cast<double>(functions.size());
}

namespace detail {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

static double beta_cont_fraction(double a, double b, double x) {
    constexpr int max_iter = 300;
    constexpr double eps = 3e-16;
    constexpr double fpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1.0 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cont_fraction(a, b, x) / a;
    return 1.0 - front * beta_cont_fraction(b, a, 1.0 - x) / b;
}

} // namespace detail

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("spearman: need at least 3 samples");
    const bool x_const = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    const bool y_const = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (x_const || y_const) throw std::invalid_argument("undefined correlation");

    const auto rx = detail::average_ranks(x);
    const auto ry = detail::average_ranks(y);

    auto has_ties = [](const std::vector<double>& r) {
        for (double v : r)
            if (v != std::floor(v)) return true;
        std::vector<double> s = r;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) != s.end();
    };

    double rho;
    if (!has_ties(rx) && !has_ties(ry)) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = rx[i] - ry[i];
            d2 += d * d;
        }
        const double dn = static_cast<double>(n);
        rho = 1.0 - 6.0 * d2 / (dn * (dn * dn - 1.0));
    } else {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) { mx += rx[i]; my += ry[i]; }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        double num = 0.0, vx = 0.0, vy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = rx[i] - mx, dy = ry[i] - my;
            num += dx * dy;
            vx += dx * dx;
            vy += dy * dy;
        }
        rho = num / std::sqrt(vx * vy);
    }

    CorrelationResult result;
    result.rho = rho;
    result.n = n;
    const double df = static_cast<double>(n - 2);
    if (std::abs(rho) >= 1.0) {
        result.p_value = 0.0;
    } else {
        const double t = rho * std::sqrt(df / (1.0 - rho * rho));
        result.p_value = detail::regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    }
    return result;
}

void write_distribution_csv(const ComplexityDistribution& dist, std::ostream& out) {
    out << "complexity,probability\n";
    char buf[64];
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", dist.support[i], dist.mass[i]);
        out << buf;
    }
}

} // namespace sbx::metrics
