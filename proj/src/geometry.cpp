#include "leolink/geometry.hpp"

#include <algorithm>

namespace leolink {

namespace {

constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

/// Right-handed local frame at a surface/shell point: x east, y completing,
/// z along the given normal. Near the poles the east direction degenerates;
/// +x is used there, which only rotates azimuth and is deterministic.
struct Frame {
  Vec3 x, y, z;
};

Frame local_frame(const Vec3& position, bool normal_outward) {
  const Vec3 up = position.normalized();
  const Vec3 z = normal_outward ? up : up * -1.0;
  Vec3 east{-up.y, up.x, 0.0};  // z_hat x up
  const double n = east.norm();
  if (n < 1e-12) {
    east = {1.0, 0.0, 0.0};
  } else {
    east = east * (1.0 / n);
  }
  const Vec3 y = z.cross(east);
  return {east, y, z};
}

LocalAngles angles_in_frame(const Frame& f, const Vec3& direction) {
  const Vec3 d = direction.normalized();
  const double c = std::clamp(d.dot(f.z), -1.0, 1.0);
  const double zenith = std::acos(c);
  const double px = d.dot(f.x);
  const double py = d.dot(f.y);
  if (std::abs(px) < 1e-15 && std::abs(py) < 1e-15) return {zenith, 0.0};
  return {zenith, std::atan2(py, px)};
}

}  // namespace

Vec3 sample_cap_point(Rng& rng, double cap_half_angle_rad, double radius_m) {
  // Area uniform: azimuth uniform, cos(polar) uniform on [cos cap, 1].
  const double cos_cap = std::cos(cap_half_angle_rad);
  const double c = 1.0 - rng.uniform() * (1.0 - cos_cap);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const double az = rng.uniform(0.0, 2.0 * kPi);
  return Vec3{s * std::cos(az), s * std::sin(az), c} * radius_m;
}

double elevation_deg(const Vec3& sat_pos, const Vec3& ut_pos) {
  const Vec3 up = ut_pos.normalized();
  const Vec3 los = (sat_pos - ut_pos).normalized();
  return std::asin(std::clamp(up.dot(los), -1.0, 1.0)) * kRadToDeg;
}

std::pair<LocalAngles, LocalAngles> local_angles(const Vec3& sat_pos, const Vec3& ut_pos) {
  const Frame sat_frame = local_frame(sat_pos, /*normal_outward=*/false);
  const Frame ut_frame = local_frame(ut_pos, /*normal_outward=*/true);
  const Vec3 sat_to_ut = ut_pos - sat_pos;
  const LocalAngles sat = angles_in_frame(sat_frame, sat_to_ut);
  const LocalAngles ut = angles_in_frame(ut_frame, sat_to_ut * -1.0);
  return {sat, ut};
}

namespace {

void fill_links(GeometrySample& g, const ScenarioConfig& config) {
  g.slant_range_m.resize(static_cast<std::size_t>(g.n_sats) * g.n_uts);
  g.delay_s.resize(g.slant_range_m.size());
  g.elevation_deg.resize(g.slant_range_m.size());
  g.sat_angles.resize(g.slant_range_m.size());
  g.ut_angles.resize(g.slant_range_m.size());
  g.visible.resize(g.slant_range_m.size());
  for (int m = 0; m < g.n_sats; ++m) {
    for (int k = 0; k < g.n_uts; ++k) {
      const int i = g.link(m, k);
      const Vec3& s = g.sat_positions[m];
      const Vec3& u = g.ut_positions[k];
      const double r = (s - u).norm();
      g.slant_range_m[i] = r;
      g.delay_s[i] = r / kSpeedOfLight;
      g.elevation_deg[i] = elevation_deg(s, u);
      const auto [sa, ua] = local_angles(s, u);
      g.sat_angles[i] = sa;
      g.ut_angles[i] = ua;
      g.visible[i] = g.elevation_deg[i] >= config.min_elevation_deg ? 1 : 0;
    }
  }
}

}  // namespace

GeometrySample sample_geometry(const ScenarioConfig& config, Rng& rng) {
  GeometrySample g;
  g.n_sats = config.n_sats;
  g.n_uts = config.n_uts;
  g.sat_positions.reserve(g.n_sats);
  g.ut_positions.reserve(g.n_uts);
  const double shell_radius = kEarthRadiusM + config.altitude_m;
  for (int m = 0; m < g.n_sats; ++m)
    g.sat_positions.push_back(
        sample_cap_point(rng, config.sat_cap_angle_deg * kDegToRad, shell_radius));
  for (int k = 0; k < g.n_uts; ++k)
    g.ut_positions.push_back(
        sample_cap_point(rng, config.ut_cap_angle_deg * kDegToRad, kEarthRadiusM));
  fill_links(g, config);
  return g;
}

double visibility_cone_half_angle_rad(double altitude_m, double min_elevation_deg) {
  const double eps = min_elevation_deg * kDegToRad;
  const double ratio = kEarthRadiusM / (kEarthRadiusM + altitude_m);
  return std::acos(ratio * std::cos(eps)) - eps;
}

GeometrySample sample_visibility_cone_geometry(const ScenarioConfig& config, Rng& rng) {
  GeometrySample g;
  g.n_sats = config.n_sats;
  g.n_uts = 1;
  g.ut_positions.push_back({0.0, 0.0, kEarthRadiusM});
  const double cone =
      visibility_cone_half_angle_rad(config.altitude_m, config.min_elevation_deg);
  const double shell_radius = kEarthRadiusM + config.altitude_m;
  g.sat_positions.reserve(g.n_sats);
  for (int m = 0; m < g.n_sats; ++m)
    g.sat_positions.push_back(sample_cap_point(rng, cone, shell_radius));
  fill_links(g, config);
  return g;
}

}  // namespace leolink
