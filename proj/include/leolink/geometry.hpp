#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "leolink/config.hpp"
#include "leolink/constants.hpp"
#include "leolink/rng.hpp"

namespace leolink {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
};

/// Zenith measured from the local UPA normal; azimuth in the local tangent
/// plane from the east-aligned x axis.
struct LocalAngles {
  double zenith_rad = 0.0;
  double azimuth_rad = 0.0;
};

/// One random drop of satellite and UT placements with per-link geometry.
struct GeometrySample {
  int n_sats = 0;
  int n_uts = 0;
  std::vector<Vec3> sat_positions;  // ECEF meters
  std::vector<Vec3> ut_positions;
  // Flattened (m, k) tables, index m * n_uts + k.
  std::vector<double> slant_range_m;
  std::vector<double> delay_s;
  std::vector<double> elevation_deg;
  std::vector<LocalAngles> sat_angles;  // departure, satellite local frame
  std::vector<LocalAngles> ut_angles;   // arrival, UT local frame
  std::vector<std::uint8_t> visible;

  int link(int m, int k) const { return m * n_uts + k; }
  int visible_count(int k) const {
    int c = 0;
    for (int m = 0; m < n_sats; ++m) c += visible[link(m, k)] ? 1 : 0;
    return c;
  }
};

/// Area-uniform point on the spherical cap of the given Earth-central half
/// angle around +z, at the given radius.
Vec3 sample_cap_point(Rng& rng, double cap_half_angle_rad, double radius_m);

/// Elevation of the satellite above the UT's local horizon, degrees.
double elevation_deg(const Vec3& sat_pos, const Vec3& ut_pos);

/// Departure angles in the satellite frame (normal toward Earth center) and
/// arrival angles in the UT frame (normal outward). Azimuth reference is the
/// east-aligned tangent basis; a boresight link returns azimuth 0.
std::pair<LocalAngles, LocalAngles> local_angles(const Vec3& sat_pos, const Vec3& ut_pos);

GeometrySample sample_geometry(const ScenarioConfig& config, Rng& rng);

/// Geometry for the sync histogram demo: one UT with satellites area-uniform
/// over its own visibility cone, so every satellite clears min elevation.
GeometrySample sample_visibility_cone_geometry(const ScenarioConfig& config, Rng& rng);

/// Earth-central half angle at which a satellite sits exactly at the minimum
/// elevation seen from the cone center.
double visibility_cone_half_angle_rad(double altitude_m, double min_elevation_deg);

}  // namespace leolink
