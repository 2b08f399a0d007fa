#include "leolink/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "leolink/association.hpp"
#include "leolink/channel.hpp"
#include "leolink/geometry.hpp"

namespace leolink {

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::kNone: return "none";
    case SweepAxis::kNSats: return "n_sats";
    case SweepAxis::kNUts: return "n_uts";
    case SweepAxis::kCpAdd: return "cp_add";
    case SweepAxis::kSyncMode: return "sync_mode";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "none") return SweepAxis::kNone;
  if (s == "n_sats") return SweepAxis::kNSats;
  if (s == "n_uts") return SweepAxis::kNUts;
  if (s == "cp_add") return SweepAxis::kCpAdd;
  if (s == "sync_mode") return SweepAxis::kSyncMode;
  throw std::invalid_argument("unknown sweep axis: " + s);
}

void CampaignSpec::validate() const {
  if (drops < 1) throw std::invalid_argument("campaign: drops must be >= 1");
  if (axis != SweepAxis::kNone && values.empty())
    throw std::invalid_argument("campaign: sweep values missing");
  if (modes.empty()) throw std::invalid_argument("campaign: no association modes selected");
  for (int p = 0; p < n_points(); ++p) config_at(p).validate();
}

ScenarioConfig CampaignSpec::config_at(int point) const {
  ScenarioConfig c = base;
  if (axis == SweepAxis::kNone) return c;
  const double v = values.at(point);
  const int iv = static_cast<int>(v);
  switch (axis) {
    case SweepAxis::kNSats: c.n_sats = iv; break;
    case SweepAxis::kNUts: c.n_uts = iv; break;
    case SweepAxis::kCpAdd: c.cp_add = iv; break;
    case SweepAxis::kSyncMode: c.sync_mode = iv == 0 ? SyncMode::kRandom : SyncMode::kOptimized; break;
    case SweepAxis::kNone: break;
  }
  return c;
}

std::vector<double> CampaignResult::rates(int point, AssociationMode mode) const {
  std::vector<double> out;
  for (const auto& r : records)
    if (r.point == point && r.mode == mode) out.push_back(r.rate_bps);
  return out;
}

std::vector<ThroughputReport> run_drop(const ScenarioConfig& config,
                                       const std::vector<AssociationMode>& modes,
                                       std::uint64_t drop_seed) {
  Rng geom_rng(hash_seed(drop_seed, 0xA1));
  const GeometrySample geom = sample_geometry(config, geom_rng);
  Rng chan_rng(hash_seed(drop_seed, 0xB2));
  const ChannelRealization channels = build_channels(geom, config, chan_rng);
  std::vector<ThroughputReport> reports;
  reports.reserve(modes.size());
  for (AssociationMode mode : modes) {
    // Fresh stream with the same seed per mode: random sync draws pair up
    // across modes (common random numbers).
    Rng sync_rng(hash_seed(drop_seed, 0xC3));
    const AssociationDecision decision = associate(mode, geom, config, sync_rng);
    reports.push_back(evaluate_link(channels, decision, config));
  }
  return reports;
}

namespace {

int worker_count() {
  if (const char* env = std::getenv("LEOLINK_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

CampaignResult run_campaign(const CampaignSpec& spec) {
  spec.validate();
  const int points = spec.n_points();
  const int total = points * spec.drops;

  struct DropSlot {
    std::vector<ThroughputReport> reports;
  };
  std::vector<DropSlot> slots(static_cast<std::size_t>(total));
  std::vector<ScenarioConfig> configs(points);
  for (int p = 0; p < points; ++p) configs[p] = spec.config_at(p);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;
  auto work = [&]() {
    for (;;) {
      const int job = next.fetch_add(1);
      if (job >= total || failed.load()) return;
      const int p = job / spec.drops;
      const int d = job % spec.drops;
      try {
        const std::uint64_t seed = hash_seed(spec.base.seed, p + 1, d + 1);
        slots[job].reports = run_drop(configs[p], spec.modes, seed);
      } catch (const std::exception& e) {
        std::scoped_lock lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) error_message = e.what();
        return;
      }
    }
  };
  const int n_workers = std::min(worker_count(), total);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("campaign drop failed: " + error_message);

  CampaignResult result;
  for (int p = 0; p < points; ++p) {
    const double value = spec.axis == SweepAxis::kNone ? 0.0 : spec.values[p];
    for (int d = 0; d < spec.drops; ++d) {
      const auto& reports = slots[static_cast<std::size_t>(p) * spec.drops + d].reports;
      for (std::size_t mi = 0; mi < spec.modes.size(); ++mi) {
        const ThroughputReport& rep = reports[mi];
        for (int k = 0; k < rep.n_uts; ++k) {
          if (rep.excluded[k]) continue;
          RateRecord r;
          r.point = p;
          r.sweep_value = value;
          r.drop = d;
          r.ut = k;
          r.mode = spec.modes[mi];
          r.sync = configs[p].sync_mode;
          r.attach = rep.attach_count[k];
          r.rate_bps = rep.rate_bps[k];
          r.rate_bps_hz = rep.rate_bps_hz[k];
          r.mean_sinr = rep.mean_sinr[k];
          r.p_desired = rep.aggregate(rep.desired, k);
          r.p_mui = rep.aggregate(rep.mui, k);
          r.p_ici = rep.aggregate(rep.ici, k);
          r.p_isi = rep.aggregate(rep.isi, k);
          r.p_noise = rep.aggregate(rep.noise, k);
          result.records.push_back(r);
        }
      }
    }
  }

  // Summaries per (point, mode); standard errors over per-drop means.
  for (int p = 0; p < points; ++p) {
    for (AssociationMode mode : spec.modes) {
      PointSummary s;
      s.point = p;
      s.sweep_value = spec.axis == SweepAxis::kNone ? 0.0 : spec.values[p];
      s.mode = mode;
      std::vector<double> rates;
      std::vector<double> drop_mean(spec.drops, 0.0);
      std::vector<int> drop_n(spec.drops, 0);
      double attach_sum = 0.0;
      for (const auto& r : result.records) {
        if (r.point != p || r.mode != mode) continue;
        rates.push_back(r.rate_bps);
        drop_mean[r.drop] += r.rate_bps;
        drop_n[r.drop] += 1;
        attach_sum += r.attach;
      }
      s.n_records = static_cast<int>(rates.size());
      const int expected = spec.drops * configs[p].n_uts;
      s.n_excluded = expected - s.n_records;
      if (!rates.empty()) {
        s.mean_rate_bps = mean(rates);
        s.median_rate_bps = median(rates);
        s.mean_attach = attach_sum / rates.size();
        std::vector<double> means;
        for (int d = 0; d < spec.drops; ++d)
          if (drop_n[d] > 0) means.push_back(drop_mean[d] / drop_n[d]);
        s.stderr_rate_bps = means.size() > 1 ? standard_error(means) : 0.0;
      }
      result.summary.push_back(s);
    }
  }
  return result;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void emit_outputs(const CampaignResult& result, const CampaignSpec& spec) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(spec.out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + spec.out_dir);
  const auto open = [&](const std::string& name) {
    std::ofstream f(fs::path(spec.out_dir) / name);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(spec.out_dir) / name).string());
    return f;
  };

  {
    auto f = open("records.csv");
    f << "point,sweep_axis,sweep_value,drop,ut,mode,sync,attach,rate_bps,rate_bps_hz,"
         "mean_sinr,p_desired,p_mui,p_ici,p_isi,p_noise\n";
    for (const auto& r : result.records) {
      f << r.point << ',' << to_string(spec.axis) << ',' << fmt(r.sweep_value) << ',' << r.drop
        << ',' << r.ut << ',' << to_string(r.mode) << ',' << to_string(r.sync) << ',' << r.attach
        << ',' << fmt(r.rate_bps) << ',' << fmt(r.rate_bps_hz) << ',' << fmt(r.mean_sinr) << ','
        << fmt(r.p_desired) << ',' << fmt(r.p_mui) << ',' << fmt(r.p_ici) << ',' << fmt(r.p_isi)
        << ',' << fmt(r.p_noise) << '\n';
    }
  }
  {
    auto f = open("summary.csv");
    f << "point,sweep_axis,sweep_value,mode,n_records,n_excluded,mean_rate_bps,median_rate_bps,"
         "stderr_rate_bps,mean_attach\n";
    for (const auto& s : result.summary) {
      f << s.point << ',' << to_string(spec.axis) << ',' << fmt(s.sweep_value) << ','
        << to_string(s.mode) << ',' << s.n_records << ',' << s.n_excluded << ','
        << fmt(s.mean_rate_bps) << ',' << fmt(s.median_rate_bps) << ',' << fmt(s.stderr_rate_bps)
        << ',' << fmt(s.mean_attach) << '\n';
    }
  }
  for (AssociationMode mode : spec.modes) {
    auto f = open(std::string("ecdf_") + to_string(mode) + ".csv");
    f << "point,sweep_value,rate_bps,fraction\n";
    for (int p = 0; p < spec.n_points(); ++p) {
      const std::vector<double> rates = result.rates(p, mode);
      if (rates.empty()) continue;
      const double value = spec.axis == SweepAxis::kNone ? 0.0 : spec.values[p];
      for (const auto& pt : ecdf(rates))
        f << p << ',' << fmt(value) << ',' << fmt(pt.value) << ',' << fmt(pt.fraction) << '\n';
    }
  }
  {
    auto f = open("config.txt");
    f << serialize_config(spec.base);
    f << "# campaign\n";
    f << "sweep_axis = " << to_string(spec.axis) << "\n";
    if (spec.axis != SweepAxis::kNone) {
      f << "sweep_values =";
      for (double v : spec.values) f << ' ' << fmt(v);
      f << "\n";
    }
    f << "drops = " << spec.drops << "\n";
  }

  if (spec.emit_plots) {
    namespace fs = std::filesystem;
    {  // ECDF step chart for the first point
      std::vector<std::string> labels;
      std::vector<std::vector<double>> xs, ys;
      for (AssociationMode mode : spec.modes) {
        const std::vector<double> rates = result.rates(0, mode);
        if (rates.empty()) continue;
        std::vector<double> x, y;
        for (const auto& pt : ecdf(rates)) {
          x.push_back(pt.value);
          y.push_back(pt.fraction);
        }
        labels.push_back(to_string(mode));
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
      }
      write_svg_lines((fs::path(spec.out_dir) / "ecdf.svg").string(), labels, xs, ys, "rate_bps",
                      "fraction");
    }
    if (spec.n_points() > 1) {
      std::vector<std::string> labels;
      std::vector<std::vector<double>> xs, ys;
      for (AssociationMode mode : spec.modes) {
        std::vector<double> x, y;
        for (const auto& s : result.summary) {
          if (s.mode != mode) continue;
          x.push_back(s.sweep_value);
          y.push_back(s.mean_rate_bps);
        }
        labels.push_back(to_string(mode));
        xs.push_back(std::move(x));
        ys.push_back(std::move(y));
      }
      write_svg_lines((fs::path(spec.out_dir) / "sweep.svg").string(), labels, xs, ys,
                      to_string(spec.axis), "mean_rate_bps");
    }
  }
}

SyncDemoResult run_sync_demo(const ScenarioConfig& config, int n_drops) {
  SyncDemoResult out;
  out.random_counts.reserve(n_drops);
  out.optimized_counts.reserve(n_drops);
  for (int d = 0; d < n_drops; ++d) {
    Rng rng(hash_seed(config.seed, 0xD4, d + 1));
    const GeometrySample geom = sample_visibility_cone_geometry(config, rng);
    std::vector<double> delays(geom.n_sats);
    std::vector<std::uint8_t> vis(geom.n_sats);
    for (int m = 0; m < geom.n_sats; ++m) {
      delays[m] = geom.delay_s[geom.link(m, 0)];
      vis[m] = geom.visible[geom.link(m, 0)];
    }
    const int s_rand = static_cast<int>(rng.uniform_int(config.n_subcarriers));
    out.random_counts.push_back(
        static_cast<int>(attachable_set(delays, vis, s_rand, config).size()));
    const int s_opt = optimize_sync(delays, vis, config);
    out.optimized_counts.push_back(
        static_cast<int>(attachable_set(delays, vis, s_opt, config).size()));
  }
  return out;
}

void emit_sync_demo_csv(const SyncDemoResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  int max_count = 0;
  for (int c : result.random_counts) max_count = std::max(max_count, c);
  for (int c : result.optimized_counts) max_count = std::max(max_count, c);
  std::vector<int> hist_rand(max_count + 1, 0), hist_opt(max_count + 1, 0);
  for (int c : result.random_counts) ++hist_rand[c];
  for (int c : result.optimized_counts) ++hist_opt[c];
  const double n = static_cast<double>(result.random_counts.size());
  f << "attach_count,random_fraction,optimized_fraction\n";
  for (int c = 0; c <= max_count; ++c)
    f << c << ',' << fmt(hist_rand[c] / n) << ',' << fmt(hist_opt[c] / n) << '\n';
}

void write_svg_lines(const std::string& path, const std::vector<std::string>& labels,
                     const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys, const std::string& x_label,
                     const std::string& y_label) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  const int w = 640, h = 420, ml = 70, mr = 20, mt = 20, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (double v : xs[i]) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
    for (double v : ys[i]) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
  }
  if (xmin > xmax) { xmin = 0; xmax = 1; }
  if (ymin > ymax) { ymin = 0; ymax = 1; }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  const auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  f << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  f << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  f << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 12 << "\" text-anchor=\"middle\">"
    << x_label << "</text>\n";
  f << "<text x=\"16\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (mt + h - mb) / 2 << ")\">" << y_label << "</text>\n";
  char num[64];
  std::snprintf(num, sizeof(num), "%g", xmin);
  f << "<text x=\"" << ml << "\" y=\"" << h - mb + 16 << "\" font-size=\"11\">" << num << "</text>\n";
  std::snprintf(num, sizeof(num), "%g", xmax);
  f << "<text x=\"" << w - mr << "\" y=\"" << h - mb + 16 << "\" text-anchor=\"end\" font-size=\"11\">"
    << num << "</text>\n";
  std::snprintf(num, sizeof(num), "%g", ymin);
  f << "<text x=\"" << ml - 6 << "\" y=\"" << h - mb << "\" text-anchor=\"end\" font-size=\"11\">"
    << num << "</text>\n";
  std::snprintf(num, sizeof(num), "%g", ymax);
  f << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 6 << "\" text-anchor=\"end\" font-size=\"11\">"
    << num << "</text>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    f << "<polyline fill=\"none\" stroke=\"" << colors[i % 5] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < xs[i].size(); ++j) f << px(xs[i][j]) << ',' << py(ys[i][j]) << ' ';
    f << "\"/>\n";
    f << "<text x=\"" << w - mr - 6 << "\" y=\"" << mt + 16 + 16 * i
      << "\" text-anchor=\"end\" fill=\"" << colors[i % 5] << "\" font-size=\"12\">" << labels[i]
      << "</text>\n";
  }
  f << "</svg>\n";
}

}  // namespace leolink
