#include "sherd/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sherd {

Mat3 orthonormalize(const Mat3& R) {
  Eigen::JacobiSVD<Mat3> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 out = svd.matrixU() * svd.matrixV().transpose();
  if (out.determinant() < 0) {
    Mat3 d = Mat3::Identity();
    d(2, 2) = -1;
    out = svd.matrixU() * d * svd.matrixV().transpose();
  }
  return out;
}

bool is_rotation(const Mat3& R, double tol) {
  return (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff() < tol &&
         std::abs(R.determinant() - 1.0) < tol;
}

RigidTransform compose(const RigidTransform& a, const RigidTransform& b) {
  RigidTransform out;
  out.R = a.R * b.R;
  out.t = a.R * b.t + a.t;
  if ((out.R.transpose() * out.R - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    out.R = orthonormalize(out.R);
  }
  return out;
}

double rotation_geodesic_angle(const Mat3& ra, const Mat3& rb) {
  const double c = ((ra.transpose() * rb).trace() - 1.0) / 2.0;
  return rad2deg(std::acos(std::clamp(c, -1.0, 1.0)));
}

Mat3 rotation_about(const Vec3& unit_axis, double angle_rad) {
  return Eigen::AngleAxisd(angle_rad, unit_axis).toRotationMatrix();
}

Mat3 rotation_between(const Vec3& from, const Vec3& to) {
  return Eigen::Quaterniond::FromTwoVectors(from, to).toRotationMatrix();
}

Axis Axis::canonicalized(const Vec3& u_in, const Vec3& v_in) {
  Axis a;
  a.v = v_in;
  const double n2 = a.v.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("axis direction is zero");
  // Skip the division when already unit so canonicalization is a bitwise
  // no-op on its own output.
  if (std::abs(n2 - 1.0) > 1e-12) a.v /= std::sqrt(n2);
  int imax = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(a.v[i]) > std::abs(a.v[imax])) imax = i;
  if (a.v[imax] < 0) a.v = -a.v;
  a.u = u_in;
  const double along = a.u.dot(a.v);
  if (std::abs(along) > 1e-12 * std::max(1.0, a.u.norm())) a.u -= along * a.v;
  return a;
}

double axis_angle_between(const Axis& a, const Axis& b) {
  const double c = std::clamp(std::abs(a.v.dot(b.v)), 0.0, 1.0);
  return rad2deg(std::acos(c));
}

double axis_line_distance(const Axis& a, const Axis& b) {
  const Vec3 w = b.u - a.u;
  const Vec3 cx = a.v.cross(b.v);
  if (cx.squaredNorm() < 1e-16) return w.cross(a.v).norm();
  return std::abs(w.dot(cx.normalized()));
}

RigidTransform axis_to_z(const Axis& a) {
  RigidTransform g;
  g.R = rotation_between(a.v, Vec3::UnitZ());
  g.t = -(g.R * a.u);
  return g;
}

RigidTransform fit_rigid(const std::vector<Vec3>& src, const std::vector<Vec3>& dst) {
  if (src.size() != dst.size() || src.size() < 3)
    throw std::invalid_argument("fit_rigid: need >= 3 paired points");
  Vec3 cs = Vec3::Zero(), cd = Vec3::Zero();
  for (size_t i = 0; i < src.size(); ++i) {
    cs += src[i];
    cd += dst[i];
  }
  cs /= double(src.size());
  cd /= double(dst.size());
  Mat3 h = Mat3::Zero();
  for (size_t i = 0; i < src.size(); ++i) h += (src[i] - cs) * (dst[i] - cd).transpose();
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0) d(2, 2) = -1;
  RigidTransform out;
  out.R = svd.matrixV() * d * svd.matrixU().transpose();
  out.t = cd - out.R * cs;
  return out;
}

}  // namespace sherd
