#pragma once

#include <vector>

#include "leolink/config.hpp"
#include "leolink/geometry.hpp"
#include "leolink/ofdm.hpp"

namespace leolink {

/// Per-UT sync points, serving sets and residual offsets for one drop.
struct AssociationDecision {
  AssociationMode mode = AssociationMode::kProposed;
  SyncMode sync = SyncMode::kOptimized;
  int n_sats = 0;
  int n_uts = 0;
  int guard = 0;       // CP window used for excess computation
  int symbol_len = 0;  // modulus for residual offsets
  std::vector<int> sync_point;                // s_k
  std::vector<std::vector<int>> serving;      // M_k, ascending satellite ids
  std::vector<std::vector<int>> candidates;   // attach window widened by cp_margin
  std::vector<SampleOffset> residual;         // per (m, k); delta < 0 marks invisible
  std::vector<std::uint8_t> excluded;         // UT had no visible satellite
  std::vector<std::uint8_t> serving_flag;     // per (m, k)

  int link(int m, int k) const { return m * n_uts + k; }
  bool is_serving(int m, int k) const { return serving_flag[link(m, k)] != 0; }
  int excluded_count() const {
    int c = 0;
    for (auto e : excluded) c += e ? 1 : 0;
    return c;
  }
};

/// Visible satellites whose residual offset at sync point s lies within the
/// attach window (cp_add by default; pass cp_add + cp_margin for the
/// candidate set). delays/visible are per-satellite columns for one UT.
std::vector<int> attachable_set(const std::vector<double>& delays_s,
                                const std::vector<std::uint8_t>& visible, int sync,
                                const ScenarioConfig& config, int window = -1);

/// Sync point in [0, N-1] maximizing the attachable-set size; ties resolve
/// to the smallest s. Event sweep, O(M + N).
int optimize_sync(const std::vector<double>& delays_s, const std::vector<std::uint8_t>& visible,
                  const ScenarioConfig& config);

AssociationDecision associate(AssociationMode mode, const GeometrySample& geom,
                              const ScenarioConfig& config, Rng& rng);

}  // namespace leolink
