#include "leolink/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "leolink/constants.hpp"

namespace leolink {

AnalyticInputs analytic_inputs(const ScenarioConfig& config) {
  AnalyticInputs in;
  in.n_sats = config.n_sats;
  in.n_uts = config.n_uts;
  in.n_subcarriers = config.n_subcarriers;
  in.cp_add = config.cp_add;
  const double pfd_sc =
      std::pow(10.0, config.pfd_limit_dbw / 10.0) * (config.subcarrier_bw_hz() / 4000.0);
  in.pfd0_w = pfd_sc * kSpeedOfLight * kSpeedOfLight /
              (4.0 * kPi * config.carrier_freq_hz * config.carrier_freq_hz);
  in.noise_w = config.noise_per_subcarrier_w();
  in.n_tx = config.n_tx();
  in.rho_sq = 1.0 / in.n_tx;
  return in;
}

double expected_desired(const AnalyticInputs& in) {
  return in.pfd0_w * (in.mu2 + (in.n_sats * in.p_cp() - 1.0) * in.mu1 * in.mu1);
}

InterferenceExpectation expected_interference(const AnalyticInputs& in) {
  const double N = in.n_subcarriers;
  const double L = in.cp_add;
  const double base = (in.n_uts - 1) * in.pfd0_w * in.rho_sq * in.range_ratio;
  InterferenceExpectation e;
  e.mui = base * (N / 3.0 + L) / (N + L);
  e.ici = base * (1.0 / 6.0) * N / (N + L);
  e.isi = base * 0.5 * N / (N + L);
  return e;
}

double spectral_efficiency_bound(const AnalyticInputs& in) {
  const double N = in.n_subcarriers;
  const double L = in.cp_add;
  const double desired = in.pfd0_w * in.n_sats * in.p_cp();
  const double denom = (in.n_uts - 1) * in.pfd0_w * in.rho_sq * in.range_ratio + in.noise_w;
  return N * N / (N + L) * std::log2(1.0 + desired / denom);
}

double spectral_efficiency_bound(AnalyticInputs in, int cp_add) {
  in.cp_add = cp_add;
  return spectral_efficiency_bound(in);
}

int optimal_cp_length(const AnalyticInputs& in, const std::vector<int>& grid) {
  if (grid.empty()) throw std::invalid_argument("optimal_cp_length: empty grid");
  int best = grid.front();
  double best_value = spectral_efficiency_bound(in, best);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = spectral_efficiency_bound(in, grid[i]);
    if (v > best_value || (v == best_value && grid[i] < best)) {
      best_value = v;
      best = grid[i];
    }
  }
  return best;
}

}  // namespace leolink
