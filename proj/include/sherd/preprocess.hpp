#pragma once

#include "sherd/geometry.hpp"
#include "sherd/sherd_cloud.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace sherd::prep {

struct PreprocessConfig {
  // region growing
  double tau_theta_deg = 4.0;   // max normal angle to the growing front
  double tau_kappa = 1.0;       // max |mean curvature| (1/mm) admitted
  int n_neighbors = 10;         // n_b
  int curvature_knn = 30;       // quadric-fit neighbourhood
  // cluster merging
  int k1 = 10;                  // boundary evaluation neighbourhood
  int k2 = 30;                  // normal averaging neighbourhood
  double rho_d = 1.0;           // mm, boundary pair distance
  double rho_n = 0.95;          // boundary normal similarity (dot)
  double rho_c = 0.1;           // boundary curvature difference
  double rho_in_n = 0.75;       // internal normal similarity
  double rho_in_c = 0.25;       // internal curvature difference
  // edge line
  double edge_spacing = 1.9;    // mm, resampled point-to-point distance
  int boundary_knn = 15;        // angular-gap neighbourhood
  double boundary_gap_deg = 120.0;  // boundary when max gap exceeds this
  int smoothing_window = 7;     // polyline smoothing support
  int min_edge_points = 50;     // below this the sherd is rejected
  // corners
  int corner_window = 11;       // line-fit support (odd)
  double corner_sigma_gain = 2.0;  // peak threshold = mean + gain * std
};

struct SherdTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AmbiguousFragment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Per-point absolute mean curvature from a local quadric fit.
std::vector<double> estimate_curvature(const std::vector<OrientedPoint>& pts, int knn);

/// Region growing from low-curvature seeds. Points may stay unassigned.
std::vector<Cluster> region_grow(const SherdCloud& cloud, const std::vector<double>& curvature,
                                 const PreprocessConfig& cfg);

/// Repeated pairwise merging of over-segmented clusters until fixpoint.
std::vector<Cluster> merge_clusters(std::vector<Cluster> clusters, const SherdCloud& cloud,
                                    const std::vector<double>& curvature,
                                    const PreprocessConfig& cfg);

/// Decides which of two candidate surface clusters is the interior using the
/// ray-to-axis sign test. Throws AmbiguousFragment on a tie.
std::pair<int, int> classify_surfaces(const SherdCloud& cloud, const Cluster& a,
                                      const Cluster& b, const Axis& axis);

/// Ordered, resampled, counter-clockwise closed boundary of the inner surface.
EdgeLine extract_edge_line(const SherdCloud& cloud, const Cluster& inner,
                           const PreprocessConfig& cfg);

/// Corner indices: peaks of the deviation-from-local-line score.
std::vector<int> detect_corners(const EdgeLine& edge, const PreprocessConfig& cfg);

/// Full per-sherd pipeline: segments surfaces (storing them in the cloud),
/// classifies inner/outer against the given axis estimate, and extracts the
/// corner-segmented edge line.
EdgeLine preprocess_sherd(SherdCloud& cloud, const Axis& axis, const PreprocessConfig& cfg);

/// The two largest clusters after growing + merging, largest first.
std::pair<Cluster, Cluster> two_main_clusters(const SherdCloud& cloud,
                                              const std::vector<double>& curvature,
                                              const PreprocessConfig& cfg);

}  // namespace sherd::prep
