#include "leolink/beamforming.hpp"

#include <cmath>
#include <stdexcept>

#include "leolink/constants.hpp"

namespace leolink {

namespace {

inline cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

double pfd_power_w(double range_m, double pfd_limit_dbw, int n_serving, double subcarrier_bw_hz) {
  if (n_serving < 1) throw std::invalid_argument("pfd_power_w: n_serving must be >= 1");
  const double pfd_lin = std::pow(10.0, pfd_limit_dbw / 10.0);
  return 4.0 * kPi * range_m * range_m * pfd_lin * (subcarrier_bw_hz / 4000.0) / n_serving;
}

cplx PrecoderSet::scalar(const ChannelRealization& ch, int m, int k, int n) const {
  const int i = link(m, k);
  const double phase = 2.0 * kPi * n * comp_delta[i] / ch.n_subcarriers;
  return unit_phase(phase) * std::sqrt(power_w[i]) * std::conj(ch.smallscale[i]);
}

PrecoderSet build_mrt_precoders(const ChannelRealization& channels,
                                const AssociationDecision& decision,
                                const ScenarioConfig& config) {
  PrecoderSet p;
  p.n_sats = channels.n_sats;
  p.n_uts = channels.n_uts;
  const std::size_t links = static_cast<std::size_t>(p.n_sats) * p.n_uts;
  p.power_w.assign(links, 0.0);
  p.comp_delta.assign(links, 0);
  p.serving.assign(links, 0);
  const double b_sc = config.subcarrier_bw_hz();
  for (int k = 0; k < p.n_uts; ++k) {
    const auto& set = decision.serving[k];
    if (set.empty()) continue;
    for (int m : set) {
      const int i = p.link(m, k);
      if (channels.pathloss_amp[i] <= 0.0)
        throw std::invalid_argument("mrt precoder: degenerate link");
      p.power_w[i] = pfd_power_w(channels.slant_range_m[i], config.pfd_limit_dbw,
                                 static_cast<int>(set.size()), b_sc);
      p.comp_delta[i] = decision.residual[i].delta;
      p.serving[i] = 1;
    }
  }
  return p;
}

std::vector<cplx> mrt_precoder(const std::vector<cplx>& sat_response, cplx alpha, int delta,
                               int subcarrier, int n_fft, double power_w) {
  double norm2 = 0.0;
  for (const auto& a : sat_response) norm2 += std::norm(a);
  if (norm2 <= 0.0) throw std::invalid_argument("mrt precoder: degenerate link");
  const cplx scale = unit_phase(2.0 * kPi * subcarrier * delta / n_fft) * std::sqrt(power_w) *
                     std::conj(alpha) / std::sqrt(norm2);
  std::vector<cplx> v(sat_response.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scale * sat_response[i];
  return v;
}

std::vector<cplx> mrc_combiner(const std::vector<cplx>& effective) {
  double norm2 = 0.0;
  for (const auto& e : effective) norm2 += std::norm(e);
  std::vector<cplx> u(effective.size(), cplx{0.0, 0.0});
  if (norm2 <= 0.0) {
    u[0] = 1.0;
    return u;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = effective[i] * inv;
  return u;
}

CombinerSet build_mrc_combiners(const ChannelRealization& channels, const PrecoderSet& precoders,
                                const AssociationDecision& decision,
                                const ScenarioConfig& config) {
  CombinerSet set;
  set.n_uts = channels.n_uts;
  set.n_subcarriers = channels.n_subcarriers;
  set.n_rx = config.n_rx();
  if (set.n_rx == 1) return set;  // implicit u = 1

  set.u.assign(static_cast<std::size_t>(set.n_uts) * set.n_subcarriers * set.n_rx, cplx{0.0, 0.0});
  std::vector<cplx> effective(set.n_rx);
  for (int k = 0; k < set.n_uts; ++k) {
    for (int n = 0; n < set.n_subcarriers; ++n) {
      std::fill(effective.begin(), effective.end(), cplx{0.0, 0.0});
      for (int m : decision.serving[k]) {
        const int i = channels.link(m, k);
        // Per-satellite desired term after compensation: the leakage diagonal
        // contributes (N - excess)/N and the transmit side collapses to a
        // real amplitude on the UT response direction.
        const SampleOffset& off = decision.residual[i];
        const double w = static_cast<double>(channels.n_subcarriers - off.excess) /
                         channels.n_subcarriers;
        const double amp = std::sqrt(precoders.power_w[i]) * channels.pathloss_amp[i] * w;
        const std::vector<cplx> a_ut = channels.ut_response(m, k, n);
        for (int r = 0; r < set.n_rx; ++r) effective[r] += amp * a_ut[r];
      }
      const std::vector<cplx> u = mrc_combiner(effective);
      std::copy(u.begin(), u.end(),
                set.u.begin() + (static_cast<std::size_t>(k) * set.n_subcarriers + n) * set.n_rx);
    }
  }
  return set;
}

}  // namespace leolink
