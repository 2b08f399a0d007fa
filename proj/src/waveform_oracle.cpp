#include "leolink/waveform_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "leolink/constants.hpp"
#include "leolink/ofdm.hpp"

namespace leolink {

namespace {

/// Shared state of one synthesis pass: per-antenna transmit streams and the
/// FFT output of every (run, UT) window for the current draw.
struct Synth {
  const ChannelRealization& ch;
  const PrecoderSet& prec;
  const AssociationDecision& dec;
  int N, guard, S, M, K, n_tx, n_rx;
  std::vector<std::vector<cplx>> sat_resp;  // (m, k), at f_c
  std::vector<std::vector<cplx>> ut_resp;
  std::vector<std::vector<cplx>> stream;    // (m, antenna): 2 symbols with CP
  std::vector<cplx> freq, rx, row;

  Synth(const ChannelRealization& ch_, const PrecoderSet& prec_, const AssociationDecision& dec_,
        const ScenarioConfig& config)
      : ch(ch_), prec(prec_), dec(dec_) {
    N = config.n_subcarriers;
    guard = dec.guard;
    S = dec.symbol_len;
    M = ch.n_sats;
    K = ch.n_uts;
    n_tx = config.n_tx();
    n_rx = config.n_rx();
    const int nc = N / 2;  // subcarrier at f_c
    sat_resp.resize(static_cast<std::size_t>(M) * K);
    ut_resp.resize(sat_resp.size());
    for (int m = 0; m < M; ++m)
      for (int k = 0; k < K; ++k) {
        const int i = ch.link(m, k);
        if (!ch.visible[i]) continue;
        const LocalAngles& sa = ch.sat_angles[i];
        sat_resp[i] =
            array_response(ch.sat_upa, sa.zenith_rad, sa.azimuth_rad, ch.carrier_freq_hz);
        ut_resp[i] = ch.ut_response(m, k, nc);
      }
    stream.resize(static_cast<std::size_t>(M) * n_tx);
    freq.resize(N);
    rx.resize(static_cast<std::size_t>(n_rx) * N);
    row.resize(N);
  }

  /// Build transmit streams for one run: either one current-epoch stream
  /// (run = that UT) or the previous epoch with all streams (run = K).
  void transmit(int run, const std::vector<cplx>& data_cur, const std::vector<cplx>& data_prev) {
    const bool prev_epoch = run == K;
    for (int m = 0; m < M; ++m) {
      for (int t = 0; t < n_tx; ++t) stream[m * n_tx + t].assign(2 * S, cplx{0.0, 0.0});
      for (int k2 = 0; k2 < K; ++k2) {
        if (!prev_epoch && k2 != run) continue;
        if (!dec.is_serving(m, k2)) continue;
        const std::vector<cplx>& a = sat_resp[ch.link(m, k2)];
        const cplx* d = (prev_epoch ? data_prev.data() : data_cur.data()) + k2 * N;
        for (int n = 0; n < N; ++n) freq[n] = prec.scalar(ch, m, k2, n) * d[n];
        fft_inplace(freq, /*inverse=*/true);
        const int base = prev_epoch ? 0 : S;  // epoch slot within the stream
        for (int t = 0; t < n_tx; ++t) {
          auto& st = stream[m * n_tx + t];
          const cplx at = a[t];
          for (int l = 0; l < N; ++l) st[base + guard + l] += at * freq[l];
          for (int l = 0; l < guard; ++l) st[base + l] += at * freq[N - guard + l];
        }
      }
    }
  }

  /// Receive at UT k: delay shift, window, FFT, combine. Returns one complex
  /// sample per subcarrier in row.
  void receive(int k, const CombinerSet& comb) {
    std::fill(rx.begin(), rx.end(), cplx{0.0, 0.0});
    for (int m = 0; m < M; ++m) {
      const int i = ch.link(m, k);
      if (!ch.visible[i]) continue;
      const SampleOffset& off = dec.residual[i];
      const int start = S + guard - off.delta;
      const cplx gain = ch.pathloss_amp[i] * ch.smallscale[i];
      const std::vector<cplx>& a_ut = ut_resp[i];
      const std::vector<cplx>& a_sat = sat_resp[i];
      for (int l = 0; l < N; ++l) {
        cplx proj{0.0, 0.0};
        for (int t = 0; t < n_tx; ++t) proj += std::conj(a_sat[t]) * stream[m * n_tx + t][start + l];
        proj *= gain;
        for (int r = 0; r < n_rx; ++r) rx[r * N + l] += a_ut[r] * proj;
      }
    }
    for (int r = 0; r < n_rx; ++r) {
      std::copy(rx.begin() + r * N, rx.begin() + (r + 1) * N, row.begin());
      fft_inplace(row, /*inverse=*/false);
      std::copy(row.begin(), row.end(), rx.begin() + r * N);
    }
    if (n_rx == 1) {
      std::copy(rx.begin(), rx.begin() + N, row.begin());
    } else {
      for (int n = 0; n < N; ++n) {
        const cplx* u = comb.at(k, n);
        cplx z{0.0, 0.0};
        for (int r = 0; r < n_rx; ++r) z += std::conj(u[r]) * rx[r * N + n];
        row[n] = z;
      }
    }
  }
};

}  // namespace

OraclePowers time_domain_oracle(const ChannelRealization& ch, const PrecoderSet& prec,
                                const CombinerSet& comb, const AssociationDecision& dec,
                                const ScenarioConfig& config, int n_symbols, Rng& rng) {
  if (!ch.freq_flat)
    throw std::invalid_argument(
        "time_domain_oracle: requires freq_flat_responses (flat channel at sample level)");
  const int N = config.n_subcarriers;
  const int K = ch.n_uts;
  for (int k = 0; k < K; ++k)
    for (int m : dec.serving[k])
      if (!ch.visible[ch.link(m, k)])
        throw std::invalid_argument("time_domain_oracle: serving set references invisible link");

  Synth synth(ch, prec, dec, config);
  const int n_runs = K + 1;
  const std::uint64_t pass_seed = rng.next_u64();

  // Pass 1: regression estimate of the diagonal transfer coefficient of each
  // current-epoch run, D = sum(z conj d) / sum |d|^2.
  std::vector<cplx> coeff(static_cast<std::size_t>(K) * K * N, cplx{0.0, 0.0});
  std::vector<double> sum_d2(coeff.size(), 0.0);
  std::vector<cplx> data_cur(static_cast<std::size_t>(K) * N);
  std::vector<cplx> data_prev(data_cur.size());
  {
    Rng pass_rng(pass_seed);
    for (int draw = 0; draw < n_symbols; ++draw) {
      for (auto& d : data_cur) d = pass_rng.cnormal();
      for (auto& d : data_prev) d = pass_rng.cnormal();
      for (int run = 0; run < K; ++run) {
        synth.transmit(run, data_cur, data_prev);
        for (int k = 0; k < K; ++k) {
          if (dec.excluded[k]) continue;
          synth.receive(k, comb);
          for (int n = 0; n < N; ++n) {
            const std::size_t i = (static_cast<std::size_t>(run) * K + k) * N + n;
            const cplx d = data_cur[run * N + n];
            coeff[i] += synth.row[n] * std::conj(d);
            sum_d2[i] += std::norm(d);
          }
        }
      }
    }
    for (std::size_t i = 0; i < coeff.size(); ++i)
      if (sum_d2[i] > 0.0) coeff[i] /= sum_d2[i];
  }

  // Pass 2 (same draws): residual powers |z - D d|^2 estimate the
  // off-diagonal leakage without sign bias; the previous-epoch run measures
  // ISI directly.
  std::vector<double> resid_mean(static_cast<std::size_t>(n_runs) * K * N, 0.0);
  std::vector<double> agg_sum(static_cast<std::size_t>(n_runs) * K, 0.0);
  std::vector<double> agg_sum2(agg_sum.size(), 0.0);
  {
    Rng pass_rng(pass_seed);
    for (int draw = 0; draw < n_symbols; ++draw) {
      for (auto& d : data_cur) d = pass_rng.cnormal();
      for (auto& d : data_prev) d = pass_rng.cnormal();
      for (int run = 0; run < n_runs; ++run) {
        synth.transmit(run, data_cur, data_prev);
        for (int k = 0; k < K; ++k) {
          if (dec.excluded[k]) continue;
          synth.receive(k, comb);
          double agg = 0.0;
          for (int n = 0; n < N; ++n) {
            cplx resid = synth.row[n];
            if (run < K)
              resid -= coeff[(static_cast<std::size_t>(run) * K + k) * N + n] *
                       data_cur[run * N + n];
            const double p = std::norm(resid);
            resid_mean[(static_cast<std::size_t>(run) * K + k) * N + n] += p;
            agg += p;
          }
          const std::size_t ai = static_cast<std::size_t>(run) * K + k;
          agg /= N;
          agg_sum[ai] += agg;
          agg_sum2[ai] += agg * agg;
        }
      }
    }
  }

  const double nd = n_symbols;
  for (auto& r : resid_mean) r /= nd;

  OraclePowers out;
  out.n_uts = K;
  out.n_subcarriers = N;
  const std::size_t cells = static_cast<std::size_t>(K) * N;
  out.desired.assign(cells, 0.0);
  out.mui.assign(cells, 0.0);
  out.ici.assign(cells, 0.0);
  out.isi.assign(cells, 0.0);
  out.desired_agg.assign(K, 0.0);
  out.mui_agg.assign(K, 0.0);
  out.ici_agg.assign(K, 0.0);
  out.isi_agg.assign(K, 0.0);
  out.desired_se.assign(K, 0.0);
  out.mui_se.assign(K, 0.0);
  out.ici_se.assign(K, 0.0);
  out.isi_se.assign(K, 0.0);

  auto agg_se = [&](int run, int k) {
    const std::size_t ai = static_cast<std::size_t>(run) * K + k;
    const double m = agg_sum[ai] / nd;
    const double var = std::max(0.0, agg_sum2[ai] / nd - m * m);
    return std::sqrt(var / nd);
  };

  for (int k = 0; k < K; ++k) {
    double dvar = 0.0, mvar = 0.0;
    for (int n = 0; n < N; ++n) {
      const int cell = out.at(k, n);
      out.isi[cell] = resid_mean[(static_cast<std::size_t>(K) * K + k) * N + n];
      double ici_cell = 0.0, mui_cell = 0.0;
      for (int run = 0; run < K; ++run) {
        const std::size_t i = (static_cast<std::size_t>(run) * K + k) * N + n;
        const double diag = std::norm(coeff[i]);
        const double resid = resid_mean[i];
        ici_cell += resid;
        // Var(|D_hat|^2) ~ 2 |D|^2 P_resid / sum|d|^2 (delta method).
        const double d2 = sum_d2[i] > 0.0 ? sum_d2[i] : 1.0;
        if (run == k) {
          out.desired[cell] = diag;
          dvar += 2.0 * diag * resid / d2;
        } else {
          mui_cell += diag;
          mvar += 2.0 * diag * resid / d2;
        }
      }
      out.ici[cell] = ici_cell;
      out.mui[cell] = mui_cell;
      out.desired_agg[k] += out.desired[cell];
      out.mui_agg[k] += mui_cell;
      out.ici_agg[k] += ici_cell;
      out.isi_agg[k] += out.isi[cell];
    }
    out.desired_agg[k] /= N;
    out.mui_agg[k] /= N;
    out.ici_agg[k] /= N;
    out.isi_agg[k] /= N;
    out.desired_se[k] = std::sqrt(dvar) / N;
    out.mui_se[k] = std::sqrt(mvar) / N;
    out.isi_se[k] = agg_se(K, k);
    double ici_var = 0.0;
    for (int run = 0; run < K; ++run) {
      const double se = agg_se(run, k);
      ici_var += se * se;
    }
    out.ici_se[k] = std::sqrt(ici_var);
  }
  return out;
}

}  // namespace leolink
