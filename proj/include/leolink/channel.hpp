#pragma once

#include <complex>
#include <vector>

#include "leolink/config.hpp"
#include "leolink/geometry.hpp"
#include "leolink/ofdm.hpp"

namespace leolink {

/// Uniform planar array described by its element counts and spacing in
/// meters (converted from the wavelength fraction once, at the carrier).
struct UpaGeometry {
  int nx = 1;
  int ny = 1;
  double spacing_m = 0.0;
};

/// Unit-norm UPA response: Kronecker product of the two axis responses, with
/// per-element phase -2 pi (f/c) d k sin(zenith){cos,sin}(azimuth).
std::vector<cplx> array_response(const UpaGeometry& upa, double zenith_rad, double azimuth_rad,
                                 double freq_hz);

/// Free-space path amplitude c / (4 pi r f); the power factor is its square.
double fspl_amplitude(double range_m, double freq_hz);

/// Rank-1 LoS channel per (satellite, UT, subcarrier) kept in factored form:
/// H = amp * alpha * a_ut (a_sat)^H. Response vectors are evaluated on
/// demand; satellite-side inner products use the closed-form Dirichlet
/// kernel so no N_tx-length vector is ever materialized.
struct ChannelRealization {
  int n_sats = 0;
  int n_uts = 0;
  int n_subcarriers = 0;
  double carrier_freq_hz = 0.0;
  double subcarrier_bw_hz = 0.0;
  bool freq_flat = false;
  UpaGeometry sat_upa;
  UpaGeometry ut_upa;
  std::vector<double> slant_range_m;
  std::vector<double> pathloss_amp;  // sqrt(beta) per (m, k)
  std::vector<cplx> smallscale;      // alpha per (m, k), |alpha| = 1
  std::vector<LocalAngles> sat_angles;
  std::vector<LocalAngles> ut_angles;
  std::vector<std::uint8_t> visible;

  int link(int m, int k) const { return m * n_uts + k; }

  /// f_n = f_c + (n - N/2) B_sc, or f_c when freq_flat is set.
  double subcarrier_freq(int n) const {
    if (freq_flat) return carrier_freq_hz;
    return carrier_freq_hz + (n - n_subcarriers / 2) * subcarrier_bw_hz;
  }

  /// (a_sat[m,k at f_n])^H (a_sat[m,k2 at f_n2]); closed form.
  cplx sat_response_corr(int m, int k, int k2, int n, int n2) const;

  /// UT-side response toward satellite m on subcarrier n (length n_rx).
  std::vector<cplx> ut_response(int m, int k, int n) const;

  /// Assembled n_rx x n_tx channel matrix, row major. Test support; the
  /// evaluation paths stay factored.
  std::vector<cplx> channel_matrix(int m, int k, int n) const;
};

ChannelRealization build_channels(const GeometrySample& geom, const ScenarioConfig& config,
                                  Rng& rng);

}  // namespace leolink
