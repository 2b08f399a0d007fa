#include "leolink/link_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "leolink/constants.hpp"

namespace leolink {

namespace {

inline cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// u^H a_ut for the victim link (m, k) on subcarrier n; 1 for 1x1 UTs.
cplx ut_gain(const ChannelRealization& ch, const CombinerSet& comb, int m, int k, int n) {
  if (comb.n_rx == 1) return {1.0, 0.0};
  const std::vector<cplx> a = ch.ut_response(m, k, n);
  const cplx* u = comb.at(k, n);
  cplx g{0.0, 0.0};
  for (int r = 0; r < comb.n_rx; ++r) g += std::conj(u[r]) * a[r];
  return g;
}

/// Window sums S_A[j] = sum_{l=excess}^{N-1} w^{jl}, S_B[j] = sum_{l=0}^{excess-1} w^{jl}
/// for w = e^{j 2 pi / N}; the leakage coefficients are these divided by N
/// with the source-side delta phase attached.
void window_sums(int excess, int n_fft, std::vector<cplx>& s_a, std::vector<cplx>& s_b) {
  s_a.assign(n_fft, cplx{0.0, 0.0});
  s_b.assign(n_fft, cplx{0.0, 0.0});
  s_a[0] = cplx(n_fft - excess, 0.0);
  s_b[0] = cplx(excess, 0.0);
  for (int j = 1; j < n_fft; ++j) {
    const cplx wj = unit_phase(2.0 * kPi * j / n_fft);
    const cplx we = unit_phase(2.0 * kPi * j * excess / n_fft);
    s_a[j] = (we - 1.0) / (1.0 - wj);
    s_b[j] = (1.0 - we) / (1.0 - wj);
  }
}

struct Accumulators {
  std::vector<double> desired, mui, ici, isi;
};

/// Exact engine: coherent m-sums of A- and B-weighted coefficients per
/// (victim n, source n'), one source stream (k') at a time.
void exact_terms(const ChannelRealization& ch, const PrecoderSet& prec, const CombinerSet& comb,
                 const AssociationDecision& dec, int k, Accumulators& acc) {
  const int N = ch.n_subcarriers;
  std::vector<cplx> t_a(static_cast<std::size_t>(N) * N);
  std::vector<cplx> t_b(static_cast<std::size_t>(N) * N);
  std::vector<cplx> chan_n(N), prec_n2(N);
  std::vector<cplx> s_a, s_b;

  for (int k2 = 0; k2 < ch.n_uts; ++k2) {
    const auto& serving = dec.serving[k2];
    if (serving.empty()) continue;
    std::fill(t_a.begin(), t_a.end(), cplx{0.0, 0.0});
    std::fill(t_b.begin(), t_b.end(), cplx{0.0, 0.0});
    bool any = false;
    for (int m : serving) {
      const int vi = ch.link(m, k);   // victim-side link
      if (!ch.visible[vi]) continue;  // below victim's horizon mask
      any = true;
      const SampleOffset& off = dec.residual[vi];
      window_sums(off.excess, N, s_a, s_b);
      const cplx chan_base = ch.pathloss_amp[vi] * ch.smallscale[vi] / static_cast<double>(N);
      for (int n = 0; n < N; ++n) chan_n[n] = chan_base * ut_gain(ch, comb, m, k, n);
      for (int n2 = 0; n2 < N; ++n2)
        prec_n2[n2] = prec.scalar(ch, m, k2, n2) * unit_phase(-2.0 * kPi * n2 * off.delta / N);
      if (ch.freq_flat) {
        const cplx corr = ch.sat_response_corr(m, k, k2, 0, 0);
        for (int n = 0; n < N; ++n) {
          const cplx cn = chan_n[n] * corr;
          for (int n2 = 0; n2 < N; ++n2) {
            const int j = n2 - n >= 0 ? n2 - n : n2 - n + N;
            const cplx base = cn * prec_n2[n2];
            t_a[n * N + n2] += base * s_a[j];
            t_b[n * N + n2] += base * s_b[j];
          }
        }
      } else {
        for (int n = 0; n < N; ++n) {
          for (int n2 = 0; n2 < N; ++n2) {
            const int j = n2 - n >= 0 ? n2 - n : n2 - n + N;
            const cplx base = chan_n[n] * ch.sat_response_corr(m, k, k2, n, n2) * prec_n2[n2];
            t_a[n * N + n2] += base * s_a[j];
            t_b[n * N + n2] += base * s_b[j];
          }
        }
      }
    }
    if (!any) continue;
    for (int n = 0; n < N; ++n) {
      const int row = n * N;
      double ici_row = 0.0, isi_row = 0.0;
      for (int n2 = 0; n2 < N; ++n2) {
        if (n2 != n) ici_row += std::norm(t_a[row + n2]);
        isi_row += std::norm(t_b[row + n2]);
      }
      const double diag = std::norm(t_a[row + n]);
      if (k2 == k) {
        acc.desired[n] += diag;
      } else {
        acc.mui[n] += diag;
      }
      acc.ici[n] += ici_row;
      acc.isi[n] += isi_row;
    }
  }
}

/// Statistical engine: see power_terms() docs.
void statistical_terms(const ChannelRealization& ch, const PrecoderSet& prec,
                       const CombinerSet& comb, const AssociationDecision& dec, int k,
                       Accumulators& acc) {
  const int N = ch.n_subcarriers;
  const int kFc = N / 2;  // subcarrier index at f_c, used for the diagonal-gain approximation
  double desired = 0.0, mui = 0.0, ici = 0.0, isi = 0.0;

  // Own serving set: coherent. Desired amplitudes are real after
  // compensation; leakage terms share only the window phases.
  {
    cplx eff{0.0, 0.0};
    cplx isi_diag{0.0, 0.0};
    std::vector<cplx> lag_amp;  // per-satellite amplitude with nonzero excess
    std::vector<int> lag_excess;
    for (int m : dec.serving[k]) {
      const int i = ch.link(m, k);
      const SampleOffset& off = dec.residual[i];
      const cplx g = ut_gain(ch, comb, m, k, kFc);
      const cplx amp = std::sqrt(prec.power_w[i]) * ch.pathloss_amp[i] * g;
      eff += amp * (static_cast<double>(N - off.excess) / N);
      if (off.excess > 0) {
        isi_diag += amp * (static_cast<double>(off.excess) / N);
        lag_amp.push_back(amp);
        lag_excess.push_back(off.excess);
      }
    }
    desired = std::norm(eff);
    isi = std::norm(isi_diag);
    if (!lag_amp.empty()) {
      double lag_energy = 0.0;
      for (int j = 1; j < N; ++j) {
        const cplx wj = unit_phase(2.0 * kPi * j / N);
        cplx s{0.0, 0.0};
        for (std::size_t t = 0; t < lag_amp.size(); ++t) {
          const cplx we = unit_phase(2.0 * kPi * j * lag_excess[t] / N);
          s += lag_amp[t] * (we - 1.0) / (1.0 - wj);
        }
        lag_energy += std::norm(s) / (static_cast<double>(N) * N);
      }
      ici += lag_energy;  // self ICI
      isi += lag_energy;  // off-diagonal self ISI mirrors it with opposite sign
    }
  }

  // Other users' streams: per-satellite powers with Parseval window factors
  // at the f_c diagonal gain; cross-satellite terms carry independent phases
  // and are dropped.
  for (int k2 = 0; k2 < ch.n_uts; ++k2) {
    if (k2 == k) continue;
    for (int m : dec.serving[k2]) {
      const int vi = ch.link(m, k);
      if (!ch.visible[vi]) continue;
      const SampleOffset& off = dec.residual[vi];
      const double w = static_cast<double>(N - off.excess) / N;
      const double gain = std::norm(ut_gain(ch, comb, m, k, kFc)) *
                          std::norm(ch.sat_response_corr(m, k, k2, kFc, kFc));
      const double base =
          prec.power_w[ch.link(m, k2)] * ch.pathloss_amp[vi] * ch.pathloss_amp[vi] * gain;
      mui += base * w * w;
      ici += base * (w - w * w);
      isi += base * (static_cast<double>(off.excess) / N);
    }
  }

  for (int n = 0; n < N; ++n) {
    acc.desired[n] = desired;
    acc.mui[n] = mui;
    acc.ici[n] = ici;
    acc.isi[n] = isi;
  }
}

}  // namespace

ThroughputReport power_terms(const ChannelRealization& channels, const PrecoderSet& precoders,
                             const CombinerSet& combiners, const AssociationDecision& decision,
                             const ScenarioConfig& config) {
  if (channels.n_sats != decision.n_sats || channels.n_uts != decision.n_uts)
    throw std::invalid_argument("power_terms: mismatched drop artifacts");
  if (config.interference_mode == InterferenceMode::kExact && config.n_subcarriers > 256)
    throw std::invalid_argument("power_terms: exact mode gated to N <= 256");

  ThroughputReport rep;
  rep.n_uts = channels.n_uts;
  rep.n_subcarriers = channels.n_subcarriers;
  rep.mode = decision.mode;
  rep.interference_mode = config.interference_mode;
  const std::size_t cells = static_cast<std::size_t>(rep.n_uts) * rep.n_subcarriers;
  rep.desired.assign(cells, 0.0);
  rep.mui.assign(cells, 0.0);
  rep.ici.assign(cells, 0.0);
  rep.isi.assign(cells, 0.0);
  rep.noise.assign(cells, config.noise_per_subcarrier_w());
  rep.attach_count.assign(rep.n_uts, 0);
  rep.excluded = decision.excluded;

  Accumulators acc;
  for (int k = 0; k < rep.n_uts; ++k) {
    rep.attach_count[k] = static_cast<int>(decision.serving[k].size());
    if (decision.excluded[k]) continue;
    const int N = rep.n_subcarriers;
    acc.desired.assign(N, 0.0);
    acc.mui.assign(N, 0.0);
    acc.ici.assign(N, 0.0);
    acc.isi.assign(N, 0.0);
    if (config.interference_mode == InterferenceMode::kExact) {
      exact_terms(channels, precoders, combiners, decision, k, acc);
    } else {
      statistical_terms(channels, precoders, combiners, decision, k, acc);
    }
    for (int n = 0; n < N; ++n) {
      const int i = rep.at(k, n);
      rep.desired[i] = acc.desired[n];
      rep.mui[i] = acc.mui[n];
      rep.ici[i] = acc.ici[n];
      rep.isi[i] = acc.isi[n];
    }
  }
  return rep;
}

void fill_sinr(ThroughputReport& rep) {
  rep.sinr.assign(rep.desired.size(), 0.0);
  for (std::size_t i = 0; i < rep.desired.size(); ++i) {
    const double gamma = rep.mui[i] + rep.ici[i] + rep.isi[i] + rep.noise[i];
    rep.sinr[i] = rep.desired[i] / gamma;
  }
  rep.mean_sinr.assign(rep.n_uts, 0.0);
  for (int k = 0; k < rep.n_uts; ++k) {
    double s = 0.0;
    for (int n = 0; n < rep.n_subcarriers; ++n) s += rep.sinr[rep.at(k, n)];
    rep.mean_sinr[k] = s / rep.n_subcarriers;
  }
}

void fill_throughput(ThroughputReport& rep, const ScenarioConfig& config) {
  const int N = config.n_subcarriers;
  rep.prelog = static_cast<double>(N) / config.symbol_len(rep.mode);
  const double b_sc = config.subcarrier_bw_hz();
  rep.rate_bps.assign(rep.n_uts, 0.0);
  rep.rate_bps_hz.assign(rep.n_uts, 0.0);
  for (int k = 0; k < rep.n_uts; ++k) {
    if (rep.excluded[k]) continue;
    double bits = 0.0;
    for (int n = 0; n < N; ++n) bits += std::log2(1.0 + rep.sinr[rep.at(k, n)]);
    rep.rate_bps[k] = rep.prelog * b_sc * bits;
    rep.rate_bps_hz[k] = rep.rate_bps[k] / config.bandwidth_hz;
  }
}

ThroughputReport evaluate_link(const ChannelRealization& channels,
                               const AssociationDecision& decision,
                               const ScenarioConfig& config) {
  const PrecoderSet prec = build_mrt_precoders(channels, decision, config);
  const CombinerSet comb = build_mrc_combiners(channels, prec, decision, config);
  ThroughputReport rep = power_terms(channels, prec, comb, decision, config);
  fill_sinr(rep);
  fill_throughput(rep, config);
  return rep;
}

}  // namespace leolink
