#pragma once

#include <cstdint>
#include <string>

namespace leolink {

enum class AssociationMode { kSingle, kFull, kProposed };
enum class SyncMode { kRandom, kOptimized };
enum class InterferenceMode { kExact, kStatistical };

/// How noise_power_dbw is interpreted: total power over the configured
/// bandwidth (divided by N per subcarrier) or directly per subcarrier.
enum class NoiseMode { kTotalInBand, kPerSubcarrier };

const char* to_string(AssociationMode m);
const char* to_string(SyncMode m);
const char* to_string(InterferenceMode m);
const char* to_string(NoiseMode m);

AssociationMode association_mode_from_string(const std::string& s);
SyncMode sync_mode_from_string(const std::string& s);
InterferenceMode interference_mode_from_string(const std::string& s);
NoiseMode noise_mode_from_string(const std::string& s);

/// All physical, waveform and campaign parameters for one scenario.
struct ScenarioConfig {
  double altitude_m = 600e3;
  double min_elevation_deg = 10.0;
  double sat_cap_angle_deg = 15.84;  // Earth-central half angle of the shell cap
  double ut_cap_angle_deg = 15.84;
  double carrier_freq_hz = 2e9;
  double bandwidth_hz = 30e6;
  int n_subcarriers = 1024;  // N, power of two
  int cp_len = 64;           // conventional CP, samples
  int cp_add = 600;          // additional CP reserved for multi-satellite attach
  int cp_margin = 0;         // widening of the candidate window only
  int sat_array_x = 32;
  int sat_array_y = 32;
  int ut_array_x = 1;
  int ut_array_y = 1;
  double antenna_spacing = 0.5;    // fraction of the carrier wavelength
  double pfd_limit_dbw = -144.0;   // dBW/m^2 in a 4 kHz reference bandwidth
  // -152.24 dBW equals thermal noise in one 29.3 kHz subcarrier plus a 7 dB
  // noise figure, hence the per-subcarrier default.
  double noise_power_dbw = -152.24;
  NoiseMode noise_mode = NoiseMode::kPerSubcarrier;
  int n_sats = 100;
  int n_uts = 100;
  std::uint64_t seed = 1;
  AssociationMode association_mode = AssociationMode::kProposed;
  SyncMode sync_mode = SyncMode::kOptimized;
  InterferenceMode interference_mode = InterferenceMode::kStatistical;
  bool freq_flat_responses = false;      // evaluate array responses at f_c for all n
  bool sync_search_full_symbol = false;  // widen the sync search past [0, N-1]

  double sample_period_s() const { return 1.0 / bandwidth_hz; }
  double subcarrier_bw_hz() const { return bandwidth_hz / n_subcarriers; }
  int n_tx() const { return sat_array_x * sat_array_y; }
  int n_rx() const { return ut_array_x * ut_array_y; }

  /// CP window actually protecting the FFT window in the given mode.
  int guard_len(AssociationMode m) const {
    return m == AssociationMode::kProposed ? cp_len + cp_add : cp_len;
  }
  int symbol_len(AssociationMode m) const { return n_subcarriers + guard_len(m); }
  int guard_len() const { return guard_len(association_mode); }
  int symbol_len() const { return symbol_len(association_mode); }

  double noise_per_subcarrier_w() const;

  /// Throws std::invalid_argument with a description on the first violation.
  void validate() const;
};

/// Small fast preset for tests and local runs.
ScenarioConfig desk_preset();
/// Table-scale parameter set used by the full campaigns.
ScenarioConfig paper_preset();
ScenarioConfig preset_by_name(const std::string& name);

/// Flat key=value config format. Keys mirror the field names above; '#'
/// starts a comment; unknown keys are errors.
ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base = ScenarioConfig{});
ScenarioConfig parse_config_file(const std::string& path, ScenarioConfig base = ScenarioConfig{});
void apply_config_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value);
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace leolink
