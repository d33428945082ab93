#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace qoe::metrics {

struct EvalReport {
    double rmse = 0.0;
    double rmse_star = 0.0;
    // Undefined when either series is constant.
    std::optional<double> pearson;
    std::optional<double> spearman;
    // Present only when per-sample CI data (or a nonzero global epsilon) exists.
    std::optional<double> outlier_ratio;
    size_t n = 0;
};

struct SignificanceResult {
    double z_stat = 0.0;
    double p_value = 1.0;
    bool significant_at_05 = false;
};

double rmse(std::span<const double> pred, std::span<const double> actual);

// Epsilon-insensitive RMSE: per-sample error max(0, |pred-actual| - ci).
double rmse_epsilon(std::span<const double> pred, std::span<const double> actual,
                    std::span<const double> ci95);
double rmse_epsilon(std::span<const double> pred, std::span<const double> actual,
                    double global_epsilon);

double pearson(std::span<const double> x, std::span<const double> y);

// Pearson over fractional ranks; ties get the mean rank.
double spearman(std::span<const double> x, std::span<const double> y);

// Fraction of samples whose |error| exceeds the per-sample CI.
double outlier_ratio(std::span<const double> pred, std::span<const double> actual,
                     std::span<const double> ci95);

// 1.96 * s / sqrt(M) for M raw subjective scores of one stimulus.
double ci95_from_scores(std::span<const double> scores);

SignificanceResult fisher_z_compare(double r1, double r2, size_t n1, size_t n2);

bool is_constant(std::span<const double> v);

// Full report for one prediction vector. Pearson/Spearman come back empty on
// constant series instead of raising; RMSE* falls back to the global epsilon
// when no per-sample CI is supplied.
EvalReport evaluate(std::span<const double> pred, std::span<const double> actual,
                    std::span<const double> ci95 = {}, double global_epsilon = 0.0);

}  // namespace qoe::metrics
