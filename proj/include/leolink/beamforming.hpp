#pragma once

#include <vector>

#include "leolink/association.hpp"
#include "leolink/channel.hpp"
#include "leolink/config.hpp"

namespace leolink {

/// Per-subcarrier transmit power admitted by the PFD ceiling, split across
/// the serving set: P = 4 pi r^2 10^(pfd/10) (B_sc / 4 kHz) / n_serving.
double pfd_power_w(double range_m, double pfd_limit_dbw, int n_serving, double subcarrier_bw_hz);

/// MRT precoders in factored form. The full vector is
///   v[m][k][n] = e^{j 2 pi n delta / N} sqrt(P) conj(alpha) a_sat(m, k, f_n),
/// so only the scalar in front of a_sat needs storing.
struct PrecoderSet {
  int n_sats = 0;
  int n_uts = 0;
  std::vector<double> power_w;       // P per (m, k); 0 when not serving
  std::vector<int> comp_delta;       // delta compensated by the phase ramp
  std::vector<std::uint8_t> serving;

  int link(int m, int k) const { return m * n_uts + k; }

  /// Scalar factor of v excluding a_sat, for subcarrier n.
  cplx scalar(const ChannelRealization& ch, int m, int k, int n) const;
};

PrecoderSet build_mrt_precoders(const ChannelRealization& channels,
                                const AssociationDecision& decision,
                                const ScenarioConfig& config);

/// Explicit-vector MRT for one rank-1 link: v = e^{j 2 pi n delta / N}
/// sqrt(P) conj(alpha) a_sat. Test and binding support.
std::vector<cplx> mrt_precoder(const std::vector<cplx>& sat_response, cplx alpha, int delta,
                               int subcarrier, int n_fft, double power_w);

/// MRC combiner: effective channel normalized to unit norm; zero input falls
/// back to the first basis direction.
std::vector<cplx> mrc_combiner(const std::vector<cplx>& effective);

/// Unit-norm receive combiners per (k, n). For single-antenna UTs this is
/// the scalar 1 and no storage is used.
struct CombinerSet {
  int n_uts = 0;
  int n_subcarriers = 0;
  int n_rx = 1;
  std::vector<cplx> u;  // (k, n, rx) when n_rx > 1

  const cplx* at(int k, int n) const { return u.data() + (static_cast<std::size_t>(k) * n_subcarriers + n) * n_rx; }
};

CombinerSet build_mrc_combiners(const ChannelRealization& channels, const PrecoderSet& precoders,
                                const AssociationDecision& decision, const ScenarioConfig& config);

}  // namespace leolink
