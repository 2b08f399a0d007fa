#include "leolink/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace leolink {

namespace {

long long arrival_samples(double delay_s, const ScenarioConfig& config) {
  return static_cast<long long>(std::floor(delay_s / config.sample_period_s()));
}

}  // namespace

std::vector<int> attachable_set(const std::vector<double>& delays_s,
                                const std::vector<std::uint8_t>& visible, int sync,
                                const ScenarioConfig& config, int window) {
  if (window < 0) window = config.cp_add;
  const int symbol = config.symbol_len(AssociationMode::kProposed);
  std::vector<int> out;
  for (std::size_t m = 0; m < delays_s.size(); ++m) {
    if (!visible[m]) continue;
    const SampleOffset off =
        sample_offset(delays_s[m], config.sample_period_s(), sync, symbol, config.cp_add);
    if (off.delta <= window) out.push_back(static_cast<int>(m));
  }
  return out;
}

int optimize_sync(const std::vector<double>& delays_s, const std::vector<std::uint8_t>& visible,
                  const ScenarioConfig& config) {
  const int symbol = config.symbol_len(AssociationMode::kProposed);
  const int window = config.cp_add;
  const int search = config.sync_search_full_symbol ? symbol : config.n_subcarriers;
  // A satellite with arrival d (mod symbol) is attachable at every
  // s in [d - window, d] (mod symbol). Accumulate interval coverage over the
  // search range with a difference array.
  std::vector<int> diff(static_cast<std::size_t>(search) + 1, 0);
  auto add_interval = [&](int lo, int hi) {  // clipped to [0, search-1]
    lo = std::max(lo, 0);
    hi = std::min(hi, search - 1);
    if (lo > hi) return;
    ++diff[lo];
    --diff[hi + 1];
  };
  bool any = false;
  for (std::size_t m = 0; m < delays_s.size(); ++m) {
    if (!visible[m]) continue;
    any = true;
    const int d = static_cast<int>(arrival_samples(delays_s[m], config) % symbol);
    const int lo = d - window;
    if (lo >= 0) {
      add_interval(lo, d);
    } else {
      add_interval(0, d);
      add_interval(lo + symbol, symbol - 1);
    }
  }
  if (!any) throw std::invalid_argument("optimize_sync: no visible satellite");
  int best_s = 0;
  int best_count = -1;
  int running = 0;
  for (int s = 0; s < search; ++s) {
    running += diff[s];
    if (running > best_count) {
      best_count = running;
      best_s = s;
    }
  }
  return best_s;
}

AssociationDecision associate(AssociationMode mode, const GeometrySample& geom,
                              const ScenarioConfig& config, Rng& rng) {
  AssociationDecision d;
  d.mode = mode;
  d.sync = config.sync_mode;
  d.n_sats = geom.n_sats;
  d.n_uts = geom.n_uts;
  d.guard = config.guard_len(mode);
  d.symbol_len = config.symbol_len(mode);
  d.sync_point.assign(geom.n_uts, 0);
  d.serving.resize(geom.n_uts);
  d.candidates.resize(geom.n_uts);
  d.excluded.assign(geom.n_uts, 0);
  d.residual.assign(geom.slant_range_m.size(), SampleOffset{-1, 0, d.guard});
  d.serving_flag.assign(geom.slant_range_m.size(), 0);

  const int n_fft = config.n_subcarriers;

  for (int k = 0; k < geom.n_uts; ++k) {
    std::vector<double> delays(geom.n_sats);
    std::vector<std::uint8_t> vis(geom.n_sats);
    int nearest = -1;
    double nearest_range = std::numeric_limits<double>::infinity();
    for (int m = 0; m < geom.n_sats; ++m) {
      const int i = geom.link(m, k);
      delays[m] = geom.delay_s[i];
      vis[m] = geom.visible[i];
      if (vis[m] && geom.slant_range_m[i] < nearest_range) {
        nearest_range = geom.slant_range_m[i];
        nearest = m;
      }
    }
    if (nearest < 0) {
      d.excluded[k] = 1;
      continue;
    }

    int s = 0;
    if (mode == AssociationMode::kProposed) {
      if (config.sync_mode == SyncMode::kRandom) {
        s = static_cast<int>(rng.uniform_int(n_fft));
      } else {
        s = optimize_sync(delays, vis, config);
      }
    } else {
      // Anchor the FFT window on the nearest satellite. s is confined to
      // [0, N-1]; an arrival landing in the CP region keeps delta <= cp_len,
      // which the precoder compensation turns into perfect sync anyway.
      const int arr = static_cast<int>(arrival_samples(delays[nearest], config) % d.symbol_len);
      s = std::min(arr, n_fft - 1);
    }
    d.sync_point[k] = s;

    for (int m = 0; m < geom.n_sats; ++m) {
      if (!vis[m]) continue;
      d.residual[d.link(m, k)] =
          sample_offset(delays[m], config.sample_period_s(), s, d.symbol_len, d.guard);
    }

    switch (mode) {
      case AssociationMode::kSingle:
        d.serving[k] = {nearest};
        break;
      case AssociationMode::kFull:
        for (int m = 0; m < geom.n_sats; ++m)
          if (vis[m]) d.serving[k].push_back(m);
        break;
      case AssociationMode::kProposed:
        d.serving[k] = attachable_set(delays, vis, s, config);
        d.candidates[k] = attachable_set(delays, vis, s, config, config.cp_add + config.cp_margin);
        break;
    }
    for (int m : d.serving[k]) d.serving_flag[d.link(m, k)] = 1;
  }
  return d;
}

}  // namespace leolink
