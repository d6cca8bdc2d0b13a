#pragma once

#include <optional>
#include <span>
#include <vector>

namespace fracnet {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Absent for fewer than
/// two points or zero variance in x.
std::optional<LinearFit> linear_fit(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(std::span<const double> v);
double variance_population(std::span<const double> v);
/// Population excess kurtosis m4 / m2^2 - 3; absent when the variance is zero.
std::optional<double> excess_kurtosis(std::span<const double> v);

/// Ranks starting at 1; ties share the average rank.
std::vector<double> average_ranks(std::span<const double> v);

/// Absent when either input has zero variance or sizes differ / n < 2.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);
std::optional<double> spearman(std::span<const double> x, std::span<const double> y);

} // namespace fracnet
