#pragma once

#include "sherd/geometry.hpp"
#include "sherd/random.hpp"
#include "sherd/sherd_cloud.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sherd::synth {

/// Radius-vs-height profile of an axially symmetric pot, with analytic slope
/// so sampled normals are exact.
struct Profile {
  enum class Kind { Cylinder, Cone, Bowl, Vase };

  Kind kind = Kind::Cylinder;
  double z0 = 0.0;      // mm
  double z1 = 120.0;    // mm
  // Cylinder: r(z) = a.
  // Cone:     r(z) = a + b*(z - z0).
  // Bowl:     oblate ellipsoid cap, r(z) = a*sqrt(1 - ((z-c)/b)^2).
  // Vase:     r(z) = a + b*sin(pi*(z - z0)/(z1 - z0)) + d*(z - z0).
  double a = 50.0, b = 0.0, c = 0.0, d = 0.0;

  double r(double z) const;
  double drdz(double z) const;

  static Profile cylinder(double radius, double z0, double z1);
  static Profile cone(double r0, double slope, double z0, double z1);
  static Profile bowl(double rx, double rz, double center_z, double z0, double z1);
  static Profile vase(double base, double bulge, double tilt, double z0, double z1);

  std::string describe() const;
};

struct PotSpec {
  std::string name = "pot";
  Profile profile;                 // outer surface radius r(z)
  double thickness = 5.0;          // mm; inner surface at r(z) - thickness
  double rim_z0 = 0.0, rim_z1 = 0.0;  // informational rim band
  double density = 2.0;            // points per mm^2 per shell
  uint64_t seed = 0;
};

/// One shell (inner or outer) of a generated pot, axis = z.
struct PotCloud {
  std::vector<OrientedPoint> inner;
  std::vector<OrientedPoint> outer;
  double inner_area = 0;  // mm^2
  double outer_area = 0;
};

/// Samples both shells of the pot with exact analytic normals.
/// Inner normals face the cavity (toward the axis), outer normals face out.
PotCloud generate_pot(const PotSpec& spec);

struct GroundTruthSherd {
  std::string id;
  int pot = 0;
  RigidTransform pose;             // sherd-local -> pot frame
  std::vector<int> inner_src;      // indices into the pot cloud (-1 for wall points)
  std::vector<int> outer_src;
};

struct GroundTruth {
  std::vector<GroundTruthSherd> sherds;
  std::vector<std::pair<int, int>> adjacency;   // M_ij = 1 edges, i < j
  std::vector<int> membership;                  // sherd -> pot

  bool adjacent(int i, int j) const;
};

struct FractureOptions {
  int n_sherds = 6;
  uint64_t seed = 1;
  double sigma_pos = 0.0;        // mm, applied after ground truth is recorded
  double sigma_normal_deg = 0.0;
  double pose_cube = 500.0;      // translations uniform in a cube of this side
  int min_cell_points = 200;
  int max_retries = 20;
};

/// Partitions the pot shells by a seeded surface Voronoi diagram, synthesizes
/// fracture-wall points between the shells, re-poses every sherd by a random
/// rigid transform (recorded in the ground truth) and then applies noise.
std::pair<std::vector<SherdCloud>, GroundTruth> fracture(const PotCloud& pot,
                                                         const FractureOptions& opt,
                                                         const std::string& id_prefix = "s");

}  // namespace sherd::synth
