#pragma once

#include "sherd/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

namespace sherd {

/// Deterministic 64-bit generator (splitmix64). Self-contained so streams do
/// not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  /// Standard normal via Box-Muller (no cached spare; one draw per call).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  Vec3 gaussian3() { return Vec3(gaussian(), gaussian(), gaussian()); }

  /// Uniform rotation on SO(3) (normalized quaternion of four normals).
  Mat3 rotation() {
    Eigen::Vector4d q(gaussian(), gaussian(), gaussian(), gaussian());
    while (q.norm() < 1e-12) q = Eigen::Vector4d(gaussian(), gaussian(), gaussian(), gaussian());
    q.normalize();
    return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
  }

  Vec3 unit_vector() {
    Vec3 v = gaussian3();
    while (v.norm() < 1e-12) v = gaussian3();
    return v.normalized();
  }

  /// Independent child stream; stable under call-order changes elsewhere.
  Rng fork(uint64_t salt) const {
    Rng r(state_ ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
    r.next();
    return r;
  }

 private:
  uint64_t state_;
};

/// FNV-1a 64-bit hash, used for provenance hashes and stream salts.
inline uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ULL) {
  const auto* b = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= b[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}
inline uint64_t fnv1a64(const std::string& s, uint64_t seed = 0xcbf29ce484222325ULL) {
  return fnv1a64(s.data(), s.size(), seed);
}

}  // namespace sherd
