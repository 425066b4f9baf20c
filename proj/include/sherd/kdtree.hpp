#pragma once

#include "sherd/geometry.hpp"

#include <vector>

namespace sherd {

/// Exact 3-d k-d tree over a fixed point set. Queries return indices into the
/// construction-time array, sorted by ascending distance; ties broken by index
/// so results are deterministic.
class KdTree {
 public:
  KdTree() = default;
  explicit KdTree(const std::vector<Vec3>& points);

  /// k nearest neighbours of q. Throws on an empty tree; clamps k to size().
  std::vector<int> knn(const Vec3& q, int k) const;

  /// All indices within `radius` of q, sorted by ascending distance.
  std::vector<int> radius(const Vec3& q, double radius) const;

  /// Index of the single nearest neighbour (-1 when empty).
  int nearest(const Vec3& q) const;

  int size() const { return static_cast<int>(pts_.size()); }

 private:
  struct Node {
    int left = -1;
    int right = -1;
    int begin = 0;   // leaf payload range in order_
    int end = 0;
    int split_dim = 0;
    double split_val = 0;
    Vec3 lo, hi;     // bounding box
  };

  int build(int begin, int end, int depth);
  void knn_search(int node, const Vec3& q, int k,
                  std::vector<std::pair<double, int>>& heap) const;
  void radius_search(int node, const Vec3& q, double r2,
                     std::vector<std::pair<double, int>>& out) const;

  std::vector<Vec3> pts_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

/// knn by brute force; the oracle counterpart of KdTree::knn.
std::vector<int> knn_brute_force(const std::vector<Vec3>& cloud, const Vec3& q, int k);

}  // namespace sherd
