#pragma once

#include "sherd/geometry.hpp"

#include <string>
#include <vector>

namespace sherd {

/// One fragment's oriented point cloud. Surface segmentation fills `inner`
/// and `outer` with disjoint index sets into `points`.
struct SherdCloud {
  std::string id;
  std::vector<OrientedPoint> points;
  std::vector<int> inner;
  std::vector<int> outer;
  std::string provenance;

  std::vector<Vec3> positions() const {
    std::vector<Vec3> out(points.size());
    for (size_t i = 0; i < points.size(); ++i) out[i] = points[i].p;
    return out;
  }
  std::vector<OrientedPoint> select(const std::vector<int>& idx) const {
    std::vector<OrientedPoint> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(points[i]);
    return out;
  }
};

/// Region-growing output: member indices into the cloud, the members on the
/// cluster's rim, and the mean absolute curvature of the members.
struct Cluster {
  std::vector<int> members;
  std::vector<int> boundary;
  double mean_curvature = 0;
};

/// Ordered, equidistant fracture boundary of the inner surface. Closed loop:
/// points.back() is adjacent to points.front().
struct EdgeLine {
  std::vector<OrientedPoint> points;
  double spacing = 0;                  // mm
  std::vector<int> corners;            // strictly increasing indices
  int rim_begin = -1, rim_end = -1;    // inclusive circular range, -1 = none

  int size() const { return static_cast<int>(points.size()); }
  bool has_rim() const { return rim_begin >= 0; }
  const Vec3& p(int i) const { return points[wrap(i)].p; }
  const Vec3& n(int i) const { return points[wrap(i)].n; }
  int wrap(int i) const {
    const int k = size();
    return ((i % k) + k) % k;
  }

  EdgeLine transformed(const RigidTransform& g) const {
    EdgeLine out = *this;
    for (auto& q : out.points) q = g.apply(q);
    return out;
  }
};

}  // namespace sherd
