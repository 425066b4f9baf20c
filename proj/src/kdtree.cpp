#include "sherd/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sherd {

namespace {
constexpr int kLeafSize = 16;

// (distance², index) ordering with index tiebreak.
inline bool pair_less(const std::pair<double, int>& a, const std::pair<double, int>& b) {
  return a.first < b.first || (a.first == b.first && a.second < b.second);
}
}  // namespace

KdTree::KdTree(const std::vector<Vec3>& points) : pts_(points) {
  order_.resize(pts_.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!pts_.empty()) root_ = build(0, static_cast<int>(pts_.size()), 0);
}

int KdTree::build(int begin, int end, int depth) {
  Node nd;
  nd.begin = begin;
  nd.end = end;
  nd.lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  nd.hi = Vec3::Constant(-std::numeric_limits<double>::infinity());
  for (int i = begin; i < end; ++i) {
    nd.lo = nd.lo.cwiseMin(pts_[order_[i]]);
    nd.hi = nd.hi.cwiseMax(pts_[order_[i]]);
  }
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(nd);
  if (end - begin <= kLeafSize) return id;

  Vec3 extent = nd.hi - nd.lo;
  int dim = 0;
  if (extent[1] > extent[dim]) dim = 1;
  if (extent[2] > extent[dim]) dim = 2;
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     if (pts_[a][dim] != pts_[b][dim]) return pts_[a][dim] < pts_[b][dim];
                     return a < b;
                   });
  nodes_[id].split_dim = dim;
  nodes_[id].split_val = pts_[order_[mid]][dim];
  const int l = build(begin, mid, depth + 1);
  const int r = build(mid, end, depth + 1);
  nodes_[id].left = l;
  nodes_[id].right = r;
  (void)depth;
  return id;
}

void KdTree::knn_search(int node, const Vec3& q, int k,
                        std::vector<std::pair<double, int>>& heap) const {
  const Node& nd = nodes_[node];
  if (nd.left < 0) {
    for (int i = nd.begin; i < nd.end; ++i) {
      const int idx = order_[i];
      const double d2 = (pts_[idx] - q).squaredNorm();
      const std::pair<double, int> cand{d2, idx};
      if (static_cast<int>(heap.size()) < k) {
        heap.push_back(cand);
        std::push_heap(heap.begin(), heap.end(), pair_less);
      } else if (pair_less(cand, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), pair_less);
        heap.back() = cand;
        std::push_heap(heap.begin(), heap.end(), pair_less);
      }
    }
    return;
  }
  const int first = q[nd.split_dim] <= nd.split_val ? nd.left : nd.right;
  const int second = first == nd.left ? nd.right : nd.left;
  knn_search(first, q, k, heap);
  // visit the far side only if its box can still beat the current worst
  const Node& sn = nodes_[second];
  double d2 = 0;
  for (int d = 0; d < 3; ++d) {
    const double lo = sn.lo[d] - q[d], hi = q[d] - sn.hi[d];
    const double g = std::max({lo, hi, 0.0});
    d2 += g * g;
  }
  if (static_cast<int>(heap.size()) < k || d2 <= heap.front().first) knn_search(second, q, k, heap);
}

std::vector<int> KdTree::knn(const Vec3& q, int k) const {
  if (pts_.empty()) throw std::runtime_error("knn on empty point set");
  k = std::min<int>(k, size());
  if (k <= 0) return {};
  std::vector<std::pair<double, int>> heap;
  heap.reserve(k + 1);
  knn_search(root_, q, k, heap);
  std::sort(heap.begin(), heap.end(), pair_less);
  std::vector<int> out(heap.size());
  for (size_t i = 0; i < heap.size(); ++i) out[i] = heap[i].second;
  return out;
}

void KdTree::radius_search(int node, const Vec3& q, double r2,
                           std::vector<std::pair<double, int>>& out) const {
  const Node& nd = nodes_[node];
  double d2 = 0;
  for (int d = 0; d < 3; ++d) {
    const double g = std::max({nd.lo[d] - q[d], q[d] - nd.hi[d], 0.0});
    d2 += g * g;
  }
  if (d2 > r2) return;
  if (nd.left < 0) {
    for (int i = nd.begin; i < nd.end; ++i) {
      const int idx = order_[i];
      const double dd = (pts_[idx] - q).squaredNorm();
      if (dd <= r2) out.push_back({dd, idx});
    }
    return;
  }
  radius_search(nd.left, q, r2, out);
  radius_search(nd.right, q, r2, out);
}

std::vector<int> KdTree::radius(const Vec3& q, double r) const {
  std::vector<std::pair<double, int>> found;
  if (root_ >= 0) radius_search(root_, q, r * r, found);
  std::sort(found.begin(), found.end(), pair_less);
  std::vector<int> out(found.size());
  for (size_t i = 0; i < found.size(); ++i) out[i] = found[i].second;
  return out;
}

int KdTree::nearest(const Vec3& q) const {
  if (pts_.empty()) return -1;
  return knn(q, 1)[0];
}

std::vector<int> knn_brute_force(const std::vector<Vec3>& cloud, const Vec3& q, int k) {
  if (cloud.empty()) throw std::runtime_error("knn on empty point set");
  std::vector<std::pair<double, int>> d(cloud.size());
  for (size_t i = 0; i < cloud.size(); ++i) d[i] = {(cloud[i] - q).squaredNorm(), int(i)};
  k = std::min<int>(k, static_cast<int>(cloud.size()));
  std::partial_sort(d.begin(), d.begin() + k, d.end(), pair_less);
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = d[i].second;
  return out;
}

}  // namespace sherd
