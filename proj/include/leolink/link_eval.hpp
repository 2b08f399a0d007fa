#pragma once

#include <vector>

#include "leolink/association.hpp"
#include "leolink/beamforming.hpp"
#include "leolink/channel.hpp"
#include "leolink/config.hpp"

namespace leolink {

/// Per-UT per-subcarrier power breakdown, SINR and throughput for one drop.
struct ThroughputReport {
  int n_uts = 0;
  int n_subcarriers = 0;
  AssociationMode mode = AssociationMode::kProposed;
  InterferenceMode interference_mode = InterferenceMode::kStatistical;
  double prelog = 1.0;
  // (k, n) tables, index k * n_subcarriers + n. Watts.
  std::vector<double> desired, mui, ici, isi, noise;
  std::vector<double> sinr;
  // per-UT results
  std::vector<double> rate_bps;
  std::vector<double> rate_bps_hz;  // rate / configured bandwidth
  std::vector<double> mean_sinr;
  std::vector<int> attach_count;
  std::vector<std::uint8_t> excluded;

  int at(int k, int n) const { return k * n_subcarriers + n; }
  double aggregate(const std::vector<double>& table, int k) const {
    double s = 0.0;
    for (int n = 0; n < n_subcarriers; ++n) s += table[at(k, n)];
    return s / n_subcarriers;
  }
  double interference_plus_noise(int k, int n) const {
    const int i = at(k, n);
    return mui[i] + ici[i] + isi[i] + noise[i];
  }
};

/// Expected powers of the five receive components for every (UT, subcarrier)
/// under unit-power independent data symbols.
///
/// Exact mode evaluates the coherent satellite sums of the full four-term
/// decomposition for every (n, n') pair; cost O(K^2 N^2 sum|M|), gated to
/// N <= 256 upstream. Statistical mode keeps the UT's own serving set
/// coherent (its cross-satellite terms share deterministic phases after
/// delay compensation and do not average out) but drops the cross-satellite
/// cross terms of other users' streams, whose phases are independent, and
/// folds the n' sums into Parseval window factors at the n-diagonal
/// beamforming gain.
ThroughputReport power_terms(const ChannelRealization& channels, const PrecoderSet& precoders,
                             const CombinerSet& combiners, const AssociationDecision& decision,
                             const ScenarioConfig& config);

/// SINR = desired / (MUI + ICI + ISI + noise), per (k, n). No clamping.
void fill_sinr(ThroughputReport& report);

/// R_k = prelog * B_sc * sum_n log2(1 + SINR), prelog N/(N+L_CP) in the
/// baseline modes and N/(N+L_CP+L_add) in the proposed mode.
void fill_throughput(ThroughputReport& report, const ScenarioConfig& config);

/// power_terms + sinr + throughput with precoders/combiners built here.
ThroughputReport evaluate_link(const ChannelRealization& channels,
                               const AssociationDecision& decision,
                               const ScenarioConfig& config);

}  // namespace leolink
