#pragma once

#include <vector>

#include "leolink/config.hpp"

namespace leolink {

/// Inputs of the ergodic spectral-efficiency expectations. Powers are per
/// subcarrier; pfd0 folds the PFD ceiling and carrier through the free-space
/// loss so that one in-window satellite delivers pfd0 / |M_k| watts.
struct AnalyticInputs {
  int n_sats = 0;       // M
  int n_uts = 0;        // K
  int n_subcarriers = 0;
  int cp_add = 0;       // attach window; the conventional CP is omitted here
  double pfd0_w = 0.0;
  double noise_w = 0.0;
  int n_tx = 1;
  double mu1 = 1.0;        // E|alpha|
  double mu2 = 1.0;        // E|alpha|^2
  double rho_sq = 0.0;     // E|array correlation|^2; 1/n_tx by default
  double range_ratio = 1.0;  // E[r_interferer^2 / r_victim^2], ~1 in the paper's step

  double p_cp() const {
    return static_cast<double>(cp_add) / (n_subcarriers + cp_add);
  }
};

AnalyticInputs analytic_inputs(const ScenarioConfig& config);

/// PFD0 (mu2 + (M p_cp - 1) mu1^2); reduces to PFD0 M p_cp at unit moments.
double expected_desired(const AnalyticInputs& in);

struct InterferenceExpectation {
  double mui = 0.0;
  double ici = 0.0;
  double isi = 0.0;
  double total() const { return mui + ici + isi; }
};

/// Window-factor forms (N/3+L)/(N+L), (1/6) N/(N+L), (1/2) N/(N+L) times
/// (K-1) PFD0 rho^2; the three factors sum to one for every L.
InterferenceExpectation expected_interference(const AnalyticInputs& in);

/// (N^2/(N+L)) log2(1 + PFD0 M p_cp / ((K-1) PFD0 rho^2 range_ratio + noise)).
double spectral_efficiency_bound(const AnalyticInputs& in);
double spectral_efficiency_bound(AnalyticInputs in, int cp_add);

/// Grid argmax of the bound; ties resolve to the smaller length.
int optimal_cp_length(const AnalyticInputs& in, const std::vector<int>& grid);

}  // namespace leolink
