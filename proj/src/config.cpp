#include "leolink/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leolink {

const char* to_string(AssociationMode m) {
  switch (m) {
    case AssociationMode::kSingle: return "single";
    case AssociationMode::kFull: return "full";
    case AssociationMode::kProposed: return "proposed";
  }
  return "?";
}

const char* to_string(SyncMode m) {
  return m == SyncMode::kRandom ? "random" : "optimized";
}

const char* to_string(InterferenceMode m) {
  return m == InterferenceMode::kExact ? "exact" : "statistical";
}

const char* to_string(NoiseMode m) {
  return m == NoiseMode::kTotalInBand ? "total_inband" : "per_subcarrier";
}

AssociationMode association_mode_from_string(const std::string& s) {
  if (s == "single") return AssociationMode::kSingle;
  if (s == "full") return AssociationMode::kFull;
  if (s == "proposed") return AssociationMode::kProposed;
  throw std::invalid_argument("unknown association_mode: " + s);
}

SyncMode sync_mode_from_string(const std::string& s) {
  if (s == "random") return SyncMode::kRandom;
  if (s == "optimized") return SyncMode::kOptimized;
  throw std::invalid_argument("unknown sync_mode: " + s);
}

InterferenceMode interference_mode_from_string(const std::string& s) {
  if (s == "exact") return InterferenceMode::kExact;
  if (s == "statistical") return InterferenceMode::kStatistical;
  throw std::invalid_argument("unknown interference_mode: " + s);
}

NoiseMode noise_mode_from_string(const std::string& s) {
  if (s == "total_inband") return NoiseMode::kTotalInBand;
  if (s == "per_subcarrier") return NoiseMode::kPerSubcarrier;
  throw std::invalid_argument("unknown noise_mode: " + s);
}

double ScenarioConfig::noise_per_subcarrier_w() const {
  const double total = std::pow(10.0, noise_power_dbw / 10.0);
  return noise_mode == NoiseMode::kTotalInBand ? total / n_subcarriers : total;
}

namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void ScenarioConfig::validate() const {
  if (n_subcarriers < 16 || !is_pow2(n_subcarriers))
    fail("n_subcarriers must be a power of two >= 16");
  if (cp_len < 0) fail("cp_len must be >= 0");
  if (cp_add < 0) fail("cp_add must be >= 0");
  if (cp_margin < 0) fail("cp_margin must be >= 0");
  if (cp_len + cp_add >= n_subcarriers) fail("cp_len + cp_add must be < n_subcarriers");
  if (!(min_elevation_deg > 0.0 && min_elevation_deg < 90.0))
    fail("min_elevation_deg must be in (0, 90)");
  if (altitude_m <= 0.0) fail("altitude_m must be > 0");
  if (n_sats < 1) fail("n_sats must be >= 1");
  if (n_uts < 1) fail("n_uts must be >= 1");
  if (sat_cap_angle_deg <= 0.0 || sat_cap_angle_deg >= 90.0) fail("sat_cap_angle_deg out of range");
  if (ut_cap_angle_deg <= 0.0 || ut_cap_angle_deg >= 90.0) fail("ut_cap_angle_deg out of range");
  if (carrier_freq_hz <= 0.0) fail("carrier_freq_hz must be > 0");
  if (bandwidth_hz <= 0.0) fail("bandwidth_hz must be > 0");
  if (sat_array_x < 1 || sat_array_y < 1 || ut_array_x < 1 || ut_array_y < 1)
    fail("array dimensions must be >= 1");
  if (antenna_spacing <= 0.0) fail("antenna_spacing must be > 0");
  if (interference_mode == InterferenceMode::kExact && n_subcarriers > 256)
    fail("interference_mode=exact is gated to n_subcarriers <= 256");
}

ScenarioConfig desk_preset() {
  ScenarioConfig c;
  c.n_subcarriers = 128;
  c.cp_len = 8;
  c.cp_add = 75;
  c.n_sats = 20;
  c.n_uts = 10;
  c.sat_array_x = 8;
  c.sat_array_y = 8;
  // Caps sized so every satellite clears the minimum elevation of every UT
  // (pair separation stays below the 15.85 deg visibility cone).
  c.sat_cap_angle_deg = 7.9;
  c.ut_cap_angle_deg = 7.9;
  // Keeps the D2H low-SNR regime at the coarser subcarrier spacing.
  c.noise_mode = NoiseMode::kPerSubcarrier;
  c.interference_mode = InterferenceMode::kStatistical;
  return c;
}

ScenarioConfig paper_preset() {
  ScenarioConfig c;  // defaults are the table-scale values
  c.interference_mode = InterferenceMode::kStatistical;
  return c;
}

ScenarioConfig preset_by_name(const std::string& name) {
  if (name == "desk") return desk_preset();
  if (name == "paper") return paper_preset();
  throw std::invalid_argument("unknown preset: " + name + " (expected desk or paper)");
}

namespace {

double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail("invalid numeric value for " + key + ": " + v);
  }
  if (pos != v.size()) fail("trailing characters in value for " + key + ": " + v);
  return d;
}

int parse_int(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) fail(key + " must be an integer, got " + v);
  return i;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(key + " must be true/false, got " + v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_entry(ScenarioConfig& c, const std::string& key, const std::string& value) {
  if (key == "altitude_m") c.altitude_m = parse_double(key, value);
  else if (key == "min_elevation_deg") c.min_elevation_deg = parse_double(key, value);
  else if (key == "sat_cap_angle_deg") c.sat_cap_angle_deg = parse_double(key, value);
  else if (key == "ut_cap_angle_deg") c.ut_cap_angle_deg = parse_double(key, value);
  else if (key == "carrier_freq_hz") c.carrier_freq_hz = parse_double(key, value);
  else if (key == "bandwidth_hz") c.bandwidth_hz = parse_double(key, value);
  else if (key == "n_subcarriers") c.n_subcarriers = parse_int(key, value);
  else if (key == "cp_len") c.cp_len = parse_int(key, value);
  else if (key == "cp_add") c.cp_add = parse_int(key, value);
  else if (key == "cp_margin") c.cp_margin = parse_int(key, value);
  else if (key == "sat_array_x") c.sat_array_x = parse_int(key, value);
  else if (key == "sat_array_y") c.sat_array_y = parse_int(key, value);
  else if (key == "ut_array_x") c.ut_array_x = parse_int(key, value);
  else if (key == "ut_array_y") c.ut_array_y = parse_int(key, value);
  else if (key == "antenna_spacing") c.antenna_spacing = parse_double(key, value);
  else if (key == "pfd_limit_dbw") c.pfd_limit_dbw = parse_double(key, value);
  else if (key == "noise_power_dbw") c.noise_power_dbw = parse_double(key, value);
  else if (key == "noise_mode") c.noise_mode = noise_mode_from_string(value);
  else if (key == "n_sats") c.n_sats = parse_int(key, value);
  else if (key == "n_uts") c.n_uts = parse_int(key, value);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "association_mode") c.association_mode = association_mode_from_string(value);
  else if (key == "sync_mode") c.sync_mode = sync_mode_from_string(value);
  else if (key == "interference_mode") c.interference_mode = interference_mode_from_string(value);
  else if (key == "freq_flat_responses") c.freq_flat_responses = parse_bool(key, value);
  else if (key == "sync_search_full_symbol") c.sync_search_full_symbol = parse_bool(key, value);
  else fail("unknown config key: " + key);
}

ScenarioConfig parse_config_text(const std::string& text, ScenarioConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("config line " + std::to_string(lineno) + " is not key = value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      fail("config line " + std::to_string(lineno) + " has an empty key or value");
    apply_config_entry(base, key, value);
  }
  return base;
}

ScenarioConfig parse_config_file(const std::string& path, ScenarioConfig base) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), base);
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  o.precision(17);
  o << "altitude_m = " << c.altitude_m << "\n";
  o << "min_elevation_deg = " << c.min_elevation_deg << "\n";
  o << "sat_cap_angle_deg = " << c.sat_cap_angle_deg << "\n";
  o << "ut_cap_angle_deg = " << c.ut_cap_angle_deg << "\n";
  o << "carrier_freq_hz = " << c.carrier_freq_hz << "\n";
  o << "bandwidth_hz = " << c.bandwidth_hz << "\n";
  o << "n_subcarriers = " << c.n_subcarriers << "\n";
  o << "cp_len = " << c.cp_len << "\n";
  o << "cp_add = " << c.cp_add << "\n";
  o << "cp_margin = " << c.cp_margin << "\n";
  o << "sat_array_x = " << c.sat_array_x << "\n";
  o << "sat_array_y = " << c.sat_array_y << "\n";
  o << "ut_array_x = " << c.ut_array_x << "\n";
  o << "ut_array_y = " << c.ut_array_y << "\n";
  o << "antenna_spacing = " << c.antenna_spacing << "\n";
  o << "pfd_limit_dbw = " << c.pfd_limit_dbw << "\n";
  o << "noise_power_dbw = " << c.noise_power_dbw << "\n";
  o << "noise_mode = " << to_string(c.noise_mode) << "\n";
  o << "n_sats = " << c.n_sats << "\n";
  o << "n_uts = " << c.n_uts << "\n";
  o << "seed = " << c.seed << "\n";
  o << "association_mode = " << to_string(c.association_mode) << "\n";
  o << "sync_mode = " << to_string(c.sync_mode) << "\n";
  o << "interference_mode = " << to_string(c.interference_mode) << "\n";
  o << "freq_flat_responses = " << (c.freq_flat_responses ? "true" : "false") << "\n";
  o << "sync_search_full_symbol = " << (c.sync_search_full_symbol ? "true" : "false") << "\n";
  return o.str();
}

}  // namespace leolink
