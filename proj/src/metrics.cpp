#include "qoe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qoe::metrics {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b, const char* who) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(who) + ": length mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    if (a.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty input");
    }
}

std::vector<double> fractional_ranks(std::span<const double> v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double mean_rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

bool is_constant(std::span<const double> v) {
    for (double x : v) {
        if (x != v.front()) return false;
    }
    return true;
}

double rmse(std::span<const double> pred, std::span<const double> actual) {
    check_pair(pred, actual, "rmse");
    double acc = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        const double e = pred[i] - actual[i];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(pred.size()));
}

double rmse_epsilon(std::span<const double> pred, std::span<const double> actual,
                    std::span<const double> ci95) {
    check_pair(pred, actual, "rmse_epsilon");
    if (ci95.size() != pred.size()) {
        throw std::invalid_argument("rmse_epsilon: ci length mismatch");
    }
    double acc = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        if (ci95[i] < 0.0) {
            throw std::invalid_argument("rmse_epsilon: negative ci at index " + std::to_string(i));
        }
        const double e = std::max(0.0, std::abs(pred[i] - actual[i]) - ci95[i]);
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(pred.size()));
}

double rmse_epsilon(std::span<const double> pred, std::span<const double> actual,
                    double global_epsilon) {
    check_pair(pred, actual, "rmse_epsilon");
    if (global_epsilon < 0.0) {
        throw std::invalid_argument("rmse_epsilon: negative epsilon");
    }
    double acc = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        const double e = std::max(0.0, std::abs(pred[i] - actual[i]) - global_epsilon);
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(pred.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y, "pearson");
    if (x.size() < 2) {
        throw std::invalid_argument("pearson: need at least 2 points");
    }
    if (is_constant(x) || is_constant(y)) {
        throw std::invalid_argument("pearson: constant series has undefined correlation");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y, "spearman");
    const std::vector<double> rx = fractional_ranks(x);
    const std::vector<double> ry = fractional_ranks(y);
    return pearson(rx, ry);
}

double outlier_ratio(std::span<const double> pred, std::span<const double> actual,
                     std::span<const double> ci95) {
    check_pair(pred, actual, "outlier_ratio");
    if (ci95.size() != pred.size()) {
        throw std::invalid_argument("outlier_ratio: ci length mismatch");
    }
    size_t outliers = 0;
    for (size_t i = 0; i < pred.size(); ++i) {
        if (ci95[i] < 0.0) {
            throw std::invalid_argument("outlier_ratio: negative ci at index " +
                                        std::to_string(i));
        }
        if (std::abs(pred[i] - actual[i]) > ci95[i]) ++outliers;
    }
    return static_cast<double>(outliers) / static_cast<double>(pred.size());
}

double ci95_from_scores(std::span<const double> scores) {
    if (scores.size() < 2) {
        throw std::invalid_argument("ci95_from_scores: need at least 2 scores");
    }
    const double n = static_cast<double>(scores.size());
    double mean = 0.0;
    for (double s : scores) mean += s;
    mean /= n;
    double ss = 0.0;
    for (double s : scores) ss += (s - mean) * (s - mean);
    const double stddev = std::sqrt(ss / (n - 1.0));
    return 1.96 * stddev / std::sqrt(n);
}

SignificanceResult fisher_z_compare(double r1, double r2, size_t n1, size_t n2) {
    if (std::abs(r1) >= 1.0 || std::abs(r2) >= 1.0) {
        throw std::invalid_argument("fisher_z_compare: |r| must be < 1");
    }
    if (n1 <= 3 || n2 <= 3) {
        throw std::invalid_argument("fisher_z_compare: sample sizes must exceed 3");
    }
    const double z1 = std::atanh(r1);
    const double z2 = std::atanh(r2);
    const double se = std::sqrt(1.0 / static_cast<double>(n1 - 3) +
                                1.0 / static_cast<double>(n2 - 3));
    SignificanceResult res;
    res.z_stat = (z1 - z2) / se;
    // Two-tailed p from the standard normal.
    res.p_value = std::erfc(std::abs(res.z_stat) / std::sqrt(2.0));
    res.significant_at_05 = res.p_value <= 0.05;
    return res;
}

EvalReport evaluate(std::span<const double> pred, std::span<const double> actual,
                    std::span<const double> ci95, double global_epsilon) {
    EvalReport report;
    report.n = pred.size();
    report.rmse = rmse(pred, actual);
    if (!ci95.empty()) {
        report.rmse_star = rmse_epsilon(pred, actual, ci95);
        report.outlier_ratio = outlier_ratio(pred, actual, ci95);
    } else {
        report.rmse_star = rmse_epsilon(pred, actual, global_epsilon);
        if (global_epsilon > 0.0) {
            std::vector<double> eps(pred.size(), global_epsilon);
            report.outlier_ratio = outlier_ratio(pred, actual, eps);
        }
    }
    if (pred.size() >= 2 && !is_constant(pred) && !is_constant(actual)) {
        report.pearson = pearson(pred, actual);
        report.spearman = spearman(pred, actual);
    }
    return report;
}

}  // namespace qoe::metrics
