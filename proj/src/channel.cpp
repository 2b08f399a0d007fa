#include "leolink/channel.hpp"

#include <cmath>

#include "leolink/constants.hpp"

namespace leolink {

namespace {

inline cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// sum_{p=0}^{count-1} e^{j 2 pi p zeta} / count, the normalized Dirichlet
/// kernel with its linear phase.
cplx dirichlet(double zeta, int count) {
  const double s = std::sin(kPi * zeta);
  if (std::abs(s) < 1e-13) {
    // zeta at an integer: every term is e^{j 2 pi p m} = 1.
    return {1.0, 0.0};
  }
  const double magnitude = std::sin(kPi * zeta * count) / (count * s);
  return unit_phase(kPi * zeta * (count - 1)) * magnitude;
}

inline double dir_cos_x(const LocalAngles& a) { return std::sin(a.zenith_rad) * std::cos(a.azimuth_rad); }
inline double dir_cos_y(const LocalAngles& a) { return std::sin(a.zenith_rad) * std::sin(a.azimuth_rad); }

}  // namespace

std::vector<cplx> array_response(const UpaGeometry& upa, double zenith_rad, double azimuth_rad,
                                 double freq_hz) {
  const LocalAngles a{zenith_rad, azimuth_rad};
  const double kx = -2.0 * kPi * freq_hz / kSpeedOfLight * upa.spacing_m * dir_cos_x(a);
  const double ky = -2.0 * kPi * freq_hz / kSpeedOfLight * upa.spacing_m * dir_cos_y(a);
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(upa.nx) * upa.ny);
  const double scale = 1.0 / std::sqrt(static_cast<double>(upa.nx) * upa.ny);
  for (int px = 0; px < upa.nx; ++px)
    for (int py = 0; py < upa.ny; ++py)
      out.push_back(unit_phase(kx * px + ky * py) * scale);
  return out;
}

double fspl_amplitude(double range_m, double freq_hz) {
  return kSpeedOfLight / (4.0 * kPi * range_m * freq_hz);
}

cplx ChannelRealization::sat_response_corr(int m, int k, int k2, int n, int n2) const {
  const LocalAngles& a = sat_angles[link(m, k)];
  const LocalAngles& b = sat_angles[link(m, k2)];
  const double fa = subcarrier_freq(n);
  const double fb = subcarrier_freq(n2);
  // conj(a[p]) b[p] terms carry e^{j 2 pi p (d/c)(fa*theta_a - fb*theta_b)} per axis.
  const double scale = sat_upa.spacing_m / kSpeedOfLight;
  const double zx = scale * (fa * dir_cos_x(a) - fb * dir_cos_x(b));
  const double zy = scale * (fa * dir_cos_y(a) - fb * dir_cos_y(b));
  return dirichlet(zx, sat_upa.nx) * dirichlet(zy, sat_upa.ny);
}

std::vector<cplx> ChannelRealization::ut_response(int m, int k, int n) const {
  const LocalAngles& a = ut_angles[link(m, k)];
  return array_response(ut_upa, a.zenith_rad, a.azimuth_rad, subcarrier_freq(n));
}

std::vector<cplx> ChannelRealization::channel_matrix(int m, int k, int n) const {
  const int i = link(m, k);
  const LocalAngles& sa = sat_angles[i];
  const std::vector<cplx> a_sat =
      array_response(sat_upa, sa.zenith_rad, sa.azimuth_rad, subcarrier_freq(n));
  const std::vector<cplx> a_ut = ut_response(m, k, n);
  const cplx g = pathloss_amp[i] * smallscale[i];
  std::vector<cplx> h(a_ut.size() * a_sat.size());
  for (std::size_t r = 0; r < a_ut.size(); ++r)
    for (std::size_t c = 0; c < a_sat.size(); ++c)
      h[r * a_sat.size() + c] = g * a_ut[r] * std::conj(a_sat[c]);
  return h;
}

ChannelRealization build_channels(const GeometrySample& geom, const ScenarioConfig& config,
                                  Rng& rng) {
  ChannelRealization ch;
  ch.n_sats = geom.n_sats;
  ch.n_uts = geom.n_uts;
  ch.n_subcarriers = config.n_subcarriers;
  ch.carrier_freq_hz = config.carrier_freq_hz;
  ch.subcarrier_bw_hz = config.subcarrier_bw_hz();
  ch.freq_flat = config.freq_flat_responses;
  const double wavelength = kSpeedOfLight / config.carrier_freq_hz;
  ch.sat_upa = {config.sat_array_x, config.sat_array_y, config.antenna_spacing * wavelength};
  ch.ut_upa = {config.ut_array_x, config.ut_array_y, config.antenna_spacing * wavelength};
  ch.sat_angles = geom.sat_angles;
  ch.ut_angles = geom.ut_angles;
  ch.visible = geom.visible;
  const std::size_t links = geom.slant_range_m.size();
  ch.slant_range_m = geom.slant_range_m;
  ch.pathloss_amp.resize(links);
  ch.smallscale.resize(links);
  for (int m = 0; m < geom.n_sats; ++m) {
    for (int k = 0; k < geom.n_uts; ++k) {
      const int i = geom.link(m, k);
      ch.pathloss_amp[i] = fspl_amplitude(geom.slant_range_m[i], config.carrier_freq_hz);
      // Frequency-flat unit-modulus small-scale term, one draw per link. The
      // deterministic LoS delay phase lives in the precoder compensation, not
      // here; this is the single phase bookkeeping point of the codebase.
      ch.smallscale[i] = unit_phase(rng.uniform(0.0, 2.0 * kPi));
    }
  }
  return ch;
}

}  // namespace leolink
