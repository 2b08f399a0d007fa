#pragma once

#include <string>
#include <vector>

#include "leolink/config.hpp"
#include "leolink/link_eval.hpp"
#include "leolink/stats.hpp"

namespace leolink {

enum class SweepAxis { kNone, kNSats, kNUts, kCpAdd, kSyncMode };

const char* to_string(SweepAxis a);
SweepAxis sweep_axis_from_string(const std::string& s);

struct CampaignSpec {
  ScenarioConfig base;
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;  // one point when axis == kNone
  int drops = 200;
  std::string out_dir;
  bool emit_plots = false;
  std::vector<AssociationMode> modes = {AssociationMode::kSingle, AssociationMode::kFull,
                                        AssociationMode::kProposed};

  void validate() const;
  /// Base config with the sweep value of the given point applied.
  ScenarioConfig config_at(int point) const;
  int n_points() const { return axis == SweepAxis::kNone ? 1 : static_cast<int>(values.size()); }
};

/// One UT of one drop under one mode.
struct RateRecord {
  int point = 0;
  double sweep_value = 0.0;
  int drop = 0;
  int ut = 0;
  AssociationMode mode = AssociationMode::kProposed;
  SyncMode sync = SyncMode::kOptimized;
  int attach = 0;
  double rate_bps = 0.0;
  double rate_bps_hz = 0.0;
  double mean_sinr = 0.0;
  double p_desired = 0.0, p_mui = 0.0, p_ici = 0.0, p_isi = 0.0, p_noise = 0.0;
};

struct PointSummary {
  int point = 0;
  double sweep_value = 0.0;
  AssociationMode mode = AssociationMode::kProposed;
  int n_records = 0;
  int n_excluded = 0;
  double mean_rate_bps = 0.0;
  double median_rate_bps = 0.0;
  double stderr_rate_bps = 0.0;  // over per-drop means
  double mean_attach = 0.0;
};

struct CampaignResult {
  std::vector<RateRecord> records;
  std::vector<PointSummary> summary;

  std::vector<double> rates(int point, AssociationMode mode) const;
};

/// Evaluates every mode on the same drop (shared geometry, channels and sync
/// draws). Drop seeds derive from (base seed, point, drop), so results are
/// independent of execution order and worker count; workers come from the
/// LEOLINK_WORKERS environment variable or hardware concurrency.
CampaignResult run_campaign(const CampaignSpec& spec);

/// One drop of one config under the given modes; the building block the
/// campaign parallelizes over.
std::vector<ThroughputReport> run_drop(const ScenarioConfig& config,
                                       const std::vector<AssociationMode>& modes,
                                       std::uint64_t drop_seed);

/// records.csv, summary.csv, ecdf_<mode>.csv, config.txt and optional SVG
/// charts under spec.out_dir.
void emit_outputs(const CampaignResult& result, const CampaignSpec& spec);

/// Attach-count histograms, random vs optimized sync, satellites dropped
/// uniformly over one UT's visibility cone.
struct SyncDemoResult {
  std::vector<int> random_counts;     // |M_k| per drop
  std::vector<int> optimized_counts;
};

SyncDemoResult run_sync_demo(const ScenarioConfig& config, int n_drops);
void emit_sync_demo_csv(const SyncDemoResult& result, const std::string& path);

/// Simple SVG polyline chart; one file, one plot.
void write_svg_lines(const std::string& path, const std::vector<std::string>& labels,
                     const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys, const std::string& x_label,
                     const std::string& y_label);

}  // namespace leolink
