#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "plvkit/errors.hpp"
#include "plvkit/types.hpp"

namespace plvkit::stats {

inline double mean_of(const std::vector<double>& values) {
    if (values.empty()) throw data_error("mean of empty vector");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

// Sample standard deviation (n-1 denominator).
inline double sample_std(const std::vector<double>& values) {
    if (values.size() < 2) throw data_error("standard deviation needs at least 2 values");
    const double m = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

struct Summary {
    double mean = 0.0;
    double std = 0.0;
};

inline Summary summarize(const std::vector<double>& values) {
    return Summary{mean_of(values), sample_std(values)};
}

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz method).
inline double betacf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 3e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw numeric_error("incomplete beta continued fraction failed to converge");
}

}  // namespace detail

// Regularized incomplete beta I_x(a, b).
inline double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw numeric_error("incomplete beta needs a, b > 0");
    if (x < 0.0 || x > 1.0) throw numeric_error("incomplete beta needs x in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(log_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::betacf(a, b, x) / a;
    return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

// Two-tailed Student-t tail probability: I_{df/(df+t^2)}(df/2, 1/2).
inline double student_t_two_tailed_p(double t, std::size_t df) {
    if (df == 0) throw numeric_error("t distribution needs df >= 1");
    const double dfd = static_cast<double>(df);
    return reg_inc_beta(dfd / 2.0, 0.5, dfd / (dfd + t * t));
}

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    std::size_t df = 0;
};

// Paired Student t across matched observations: d = a - b,
// t = mean(d) / (sd(d)/sqrt(n)) with sample sd, df = n - 1.
inline TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw data_error("paired test needs equally sized samples (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    const std::size_t n = a.size();
    if (n < 2) throw data_error("paired test needs at least 2 observations");

    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    const double md = mean_of(d);
    const double sd = sample_std(d);

    TTestResult res;
    res.df = n - 1;
    if (sd == 0.0) {
        if (md != 0.0)
            throw degenerate_variance_error("constant nonzero paired difference " +
                                            std::to_string(md) + "; t undefined");
        res.t = 0.0;
        res.p = 1.0;
        return res;
    }
    res.t = md / (sd / std::sqrt(static_cast<double>(n)));
    res.p = student_t_two_tailed_p(res.t, res.df);
    return res;
}

// Task-vs-rest contrast per region pair; grids are subject x pair in the
// fixed pair order from region_pairs().
inline std::vector<RegionPairResult> region_report(
    const std::vector<std::vector<double>>& task_values,
    const std::vector<std::vector<double>>& rest_values) {
    const auto pairs = region_pairs();
    const std::size_t n_subjects = task_values.size();
    if (rest_values.size() != n_subjects)
        throw data_error("task/rest grids have different subject counts");
    if (n_subjects < 2) throw data_error("region report needs at least 2 subjects");
    for (std::size_t s = 0; s < n_subjects; ++s)
        if (task_values[s].size() != pairs.size() || rest_values[s].size() != pairs.size())
            throw data_error("region grid row " + std::to_string(s) + " does not cover all " +
                             std::to_string(pairs.size()) + " region pairs");

    std::vector<RegionPairResult> report;
    report.reserve(pairs.size());
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        std::vector<double> task_col(n_subjects), rest_col(n_subjects);
        for (std::size_t s = 0; s < n_subjects; ++s) {
            task_col[s] = task_values[s][pi];
            rest_col[s] = rest_values[s][pi];
        }
        const TTestResult tt = paired_t_test(task_col, rest_col);
        RegionPairResult row;
        row.a = pairs[pi].first;
        row.b = pairs[pi].second;
        row.mean_task = mean_of(task_col);
        row.mean_rest = mean_of(rest_col);
        row.t = tt.t;
        row.p = tt.p;
        row.df = tt.df;
        report.push_back(row);
    }
    return report;
}

}  // namespace plvkit::stats
