#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <string>
#include <vector>

namespace sherd {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double d) { return d * kPi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / kPi; }

/// A surface sample: position (mm) and unit normal.
struct OrientedPoint {
  Vec3 p = Vec3::Zero();
  Vec3 n = Vec3::UnitZ();
};

/// Rigid motion x -> R*x + t. Column-vector convention throughout.
struct RigidTransform {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return R * p + t; }
  Vec3 rotate(const Vec3& v) const { return R * v; }
  OrientedPoint apply(const OrientedPoint& q) const { return {R * q.p + t, R * q.n}; }

  RigidTransform inverse() const { return {R.transpose(), -(R.transpose() * t)}; }

  static RigidTransform identity() { return {}; }
};

/// result applies b first, then a.
RigidTransform compose(const RigidTransform& a, const RigidTransform& b);

/// Projects a near-rotation back onto SO(3) (polar decomposition via SVD).
Mat3 orthonormalize(const Mat3& R);

bool is_rotation(const Mat3& R, double tol = 1e-9);

/// Smallest rotation angle between two rotations, in degrees, range [0, 180].
double rotation_geodesic_angle(const Mat3& ra, const Mat3& rb);

Mat3 rotation_about(const Vec3& unit_axis, double angle_rad);

/// Minimal rotation taking unit vector `from` onto unit vector `to`.
Mat3 rotation_between(const Vec3& from, const Vec3& to);

/// Line in space with a canonical parameterization: u is the point on the
/// line closest to the origin and v's largest-magnitude component is positive.
struct Axis {
  Vec3 u = Vec3::Zero();
  Vec3 v = Vec3::UnitZ();

  static Axis canonicalized(const Vec3& u, const Vec3& v);
  Axis canonical() const { return canonicalized(u, v); }

  /// Distance of a point to the axis line.
  double radius_of(const Vec3& p) const { return ((p - u).cross(v)).norm(); }
  /// Signed height of a point along the axis direction.
  double height_of(const Vec3& p) const { return (p - u).dot(v); }

  Axis transformed(const RigidTransform& g) const {
    return canonicalized(g.apply(u), g.rotate(v));
  }
};

/// Angle between two axis directions ignoring sign, degrees in [0, 90].
double axis_angle_between(const Axis& a, const Axis& b);

/// Minimum distance between the two axis lines.
double axis_line_distance(const Axis& a, const Axis& b);

/// Rigid map sending the axis line onto the z-axis (u -> origin, v -> +z).
RigidTransform axis_to_z(const Axis& a);

/// Index correspondences between two edge lines.
struct CorrespondenceSet {
  std::string source;
  std::string target;
  std::vector<std::pair<int, int>> pairs;
};

/// Least-squares rigid transform mapping src[i] -> dst[i] (Kabsch/Umeyama,
/// no scaling). Requires at least 3 non-degenerate pairs.
RigidTransform fit_rigid(const std::vector<Vec3>& src, const std::vector<Vec3>& dst);

}  // namespace sherd
