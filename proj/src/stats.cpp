#include "leolink/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace leolink {

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
  if (v.size() < 2) throw std::invalid_argument("variance: need at least two values");
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double standard_error(const std::vector<double>& v) {
  return std::sqrt(variance(v) / static_cast<double>(v.size()));
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  if (v.size() % 2 == 1) return v[h];
  return 0.5 * (v[h - 1] + v[h]);
}

std::vector<EcdfPoint> ecdf(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ecdf: empty input");
  std::sort(values.begin(), values.end());
  std::vector<EcdfPoint> table(values.size());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    table[i] = {values[i], static_cast<double>(i + 1) / n};
  return table;
}

double ecdf_quantile(const std::vector<EcdfPoint>& table, double q) {
  for (const auto& p : table)
    if (p.fraction >= q) return p.value;
  return table.back().value;
}

std::pair<double, double> bootstrap_median_ci(const std::vector<double>& values, int n_resamples,
                                              double level, Rng& rng) {
  if (values.empty()) throw std::invalid_argument("bootstrap: empty input");
  std::vector<double> medians(n_resamples);
  std::vector<double> resample(values.size());
  for (int b = 0; b < n_resamples; ++b) {
    for (auto& r : resample)
      r = values[static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(values.size())))];
    medians[b] = median(resample);
  }
  std::sort(medians.begin(), medians.end());
  const double alpha = (1.0 - level) / 2.0;
  const auto pick = [&](double q) {
    const auto idx = static_cast<std::size_t>(
        std::clamp(q * (n_resamples - 1), 0.0, static_cast<double>(n_resamples - 1)));
    return medians[idx];
  };
  return {pick(alpha), pick(1.0 - alpha)};
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * (i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman: need matched inputs of size >= 2");
  const std::vector<double> ra = ranks(a);
  const std::vector<double> rb = ranks(b);
  const double ma = mean(ra), mb = mean(rb);
  double num = 0.0, da = 0.0, db = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  return num / std::sqrt(da * db);
}

double ks_uniform_distance(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ks: empty input");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    d = std::max(d, std::abs((i + 1) / n - values[i]));
    d = std::max(d, std::abs(values[i] - i / n));
  }
  return d;
}

bool is_unimodal(const std::vector<double>& v, double tol) {
  int sign_changes = 0;
  int last_sign = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (std::abs(d) <= tol) continue;
    const int s = d > 0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) {
      ++sign_changes;
      if (s > 0) return false;  // fell then rose again
    }
    last_sign = s;
  }
  return sign_changes <= 1;
}

}  // namespace leolink
