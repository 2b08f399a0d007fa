#pragma once

#include <utility>
#include <vector>

#include "leolink/rng.hpp"

namespace leolink {

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v);  // unbiased
double standard_error(const std::vector<double>& v);

/// Median of the values (average of the central pair for even sizes).
double median(std::vector<double> v);

struct EcdfPoint {
  double value = 0.0;
  double fraction = 0.0;
};

/// Right-continuous empirical CDF: fraction at each sorted sample.
std::vector<EcdfPoint> ecdf(std::vector<double> values);

/// Smallest value whose ECDF fraction reaches q.
double ecdf_quantile(const std::vector<EcdfPoint>& table, double q);

/// Percentile bootstrap interval for the median.
std::pair<double, double> bootstrap_median_ci(const std::vector<double>& values, int n_resamples,
                                              double level, Rng& rng);

/// Spearman rank correlation (average ranks on ties).
double spearman(const std::vector<double>& a, const std::vector<double>& b);

/// Kolmogorov-Smirnov distance of samples against Uniform(0, 1).
double ks_uniform_distance(std::vector<double> values);

/// Single rising-then-falling shape (or monotone): at most one sign change
/// in the successive differences, ignoring differences below tol.
bool is_unimodal(const std::vector<double>& v, double tol = 0.0);

}  // namespace leolink
