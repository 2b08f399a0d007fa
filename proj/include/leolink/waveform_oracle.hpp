#pragma once

#include <vector>

#include "leolink/association.hpp"
#include "leolink/beamforming.hpp"
#include "leolink/channel.hpp"
#include "leolink/config.hpp"
#include "leolink/link_eval.hpp"
#include "leolink/rng.hpp"

namespace leolink {

/// Empirical per-(UT, subcarrier) power decomposition measured from
/// synthesized waveforms, with per-UT aggregates and their standard errors.
struct OraclePowers {
  int n_uts = 0;
  int n_subcarriers = 0;
  std::vector<double> desired, mui, ici, isi;  // (k, n)
  // per-UT aggregates: mean over subcarriers, with standard errors
  std::vector<double> desired_agg, mui_agg, ici_agg, isi_agg;
  std::vector<double> desired_se, mui_se, ici_se, isi_se;

  int at(int k, int n) const { return k * n_subcarriers + n; }
};

/// Measures desired/MUI/ICI/ISI powers by running the transmit chain sample
/// by sample: per-antenna IFFT, CP insertion, integer delay shifts, CP
/// removal at each UT's sync point, FFT, combining. Sources are isolated by
/// linearity (one current-epoch stream at a time plus one previous-epoch
/// run); powers are averaged over n_symbols random unit-power Gaussian
/// symbol draws. Requires freq_flat_responses: the channel is applied as a
/// frequency-flat matrix at sample level, which is also what the exact
/// engine evaluates in that mode.
OraclePowers time_domain_oracle(const ChannelRealization& channels, const PrecoderSet& precoders,
                                const CombinerSet& combiners, const AssociationDecision& decision,
                                const ScenarioConfig& config, int n_symbols, Rng& rng);

}  // namespace leolink
