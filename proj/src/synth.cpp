#include "sherd/synth.hpp"

#include "sherd/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sherd::synth {

double Profile::r(double z) const {
  switch (kind) {
    case Kind::Cylinder: return a;
    case Kind::Cone: return a + b * (z - z0);
    case Kind::Bowl: {
      const double s = (z - c) / b;
      return a * std::sqrt(std::max(1e-12, 1.0 - s * s));
    }
    case Kind::Vase: {
      const double u = (z - z0) / (z1 - z0);
      return a + b * std::sin(kPi * u) + d * (z - z0);
    }
  }
  return a;
}

double Profile::drdz(double z) const {
  switch (kind) {
    case Kind::Cylinder: return 0.0;
    case Kind::Cone: return b;
    case Kind::Bowl: {
      const double s = (z - c) / b;
      const double root = std::sqrt(std::max(1e-12, 1.0 - s * s));
      return -a * s / (b * root);
    }
    case Kind::Vase: {
      const double u = (z - z0) / (z1 - z0);
      return b * std::cos(kPi * u) * kPi / (z1 - z0) + d;
    }
  }
  return 0.0;
}

Profile Profile::cylinder(double radius, double z0, double z1) {
  Profile p;
  p.kind = Kind::Cylinder;
  p.a = radius;
  p.z0 = z0;
  p.z1 = z1;
  return p;
}

Profile Profile::cone(double r0, double slope, double z0, double z1) {
  Profile p;
  p.kind = Kind::Cone;
  p.a = r0;
  p.b = slope;
  p.z0 = z0;
  p.z1 = z1;
  return p;
}

Profile Profile::bowl(double rx, double rz, double center_z, double z0, double z1) {
  Profile p;
  p.kind = Kind::Bowl;
  p.a = rx;
  p.b = rz;
  p.c = center_z;
  p.z0 = z0;
  p.z1 = z1;
  return p;
}

Profile Profile::vase(double base, double bulge, double tilt, double z0, double z1) {
  Profile p;
  p.kind = Kind::Vase;
  p.a = base;
  p.b = bulge;
  p.d = tilt;
  p.z0 = z0;
  p.z1 = z1;
  return p;
}

std::string Profile::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Cylinder: os << "cylinder"; break;
    case Kind::Cone: os << "cone"; break;
    case Kind::Bowl: os << "bowl"; break;
    case Kind::Vase: os << "vase"; break;
  }
  os << " a=" << a << " b=" << b << " c=" << c << " d=" << d << " z=[" << z0 << "," << z1 << "]";
  return os.str();
}

namespace {

// Area of the surface of revolution rho(z) over [z0, z1] by composite Simpson.
double revolution_area(const std::function<double(double)>& rho,
                       const std::function<double(double)>& drho, double z0, double z1) {
  const int n = 2048;  // even
  const double h = (z1 - z0) / n;
  auto f = [&](double z) { return 2.0 * kPi * rho(z) * std::sqrt(1.0 + drho(z) * drho(z)); };
  double s = f(z0) + f(z1);
  for (int i = 1; i < n; ++i) s += f(z0 + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Samples one shell with density points/mm^2. z is drawn by inverse CDF of
// the area measure, theta uniform. sign=+1 outward normals, -1 cavity-facing.
std::vector<OrientedPoint> sample_shell(const std::function<double(double)>& rho,
                                        const std::function<double(double)>& drho, double z0,
                                        double z1, double density, double sign, Rng& rng,
                                        double* area_out) {
  const double area = revolution_area(rho, drho, z0, z1);
  if (area_out) *area_out = area;
  const int n = static_cast<int>(std::llround(area * density));

  // tabulated inverse CDF of z
  const int table = 4096;
  std::vector<double> cdf(table + 1, 0.0);
  const double h = (z1 - z0) / table;
  auto f = [&](double z) { return rho(z) * std::sqrt(1.0 + drho(z) * drho(z)); };
  for (int i = 1; i <= table; ++i) {
    const double za = z0 + (i - 1) * h, zb = z0 + i * h;
    cdf[i] = cdf[i - 1] + 0.5 * (f(za) + f(zb)) * h;
  }
  const double total = cdf[table];

  std::vector<OrientedPoint> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double target = rng.uniform() * total;
    int lo = 0, hi = table;
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (cdf[mid] <= target ? lo : hi) = mid;
    }
    const double frac = (target - cdf[lo]) / std::max(1e-300, cdf[lo + 1] - cdf[lo]);
    const double z = z0 + (lo + frac) * h;
    const double th = rng.uniform() * 2.0 * kPi;
    const double r = rho(z), dr = drho(z);
    const double inv = 1.0 / std::sqrt(1.0 + dr * dr);
    OrientedPoint q;
    q.p = Vec3(r * std::cos(th), r * std::sin(th), z);
    q.n = sign * Vec3(std::cos(th) * inv, std::sin(th) * inv, -dr * inv);
    out.push_back(q);
  }
  return out;
}

Vec3 perturb_normal(const Vec3& n, double sigma_deg, Rng& rng) {
  if (sigma_deg <= 0) return n;
  Vec3 t = n.cross(rng.unit_vector());
  while (t.norm() < 1e-9) t = n.cross(rng.unit_vector());
  t.normalize();
  const double ang = deg2rad(sigma_deg) * rng.gaussian();
  return (rotation_about(t, ang) * n).normalized();
}

}  // namespace

PotCloud generate_pot(const PotSpec& spec) {
  if (spec.thickness <= 0) throw std::invalid_argument("pot thickness must be positive");
  const Profile& pr = spec.profile;
  for (int i = 0; i <= 64; ++i) {
    const double z = pr.z0 + (pr.z1 - pr.z0) * i / 64.0;
    if (pr.r(z) <= spec.thickness / 2)
      throw std::invalid_argument("profile radius must exceed half the wall thickness");
  }
  Rng rng(spec.seed);
  PotCloud out;
  auto rho_out = [&](double z) { return pr.r(z); };
  auto drho_out = [&](double z) { return pr.drdz(z); };
  auto rho_in = [&](double z) { return pr.r(z) - spec.thickness; };
  Rng r1 = rng.fork(1), r2 = rng.fork(2);
  out.outer = sample_shell(rho_out, drho_out, pr.z0, pr.z1, spec.density, +1.0, r1,
                           &out.outer_area);
  out.inner = sample_shell(rho_in, drho_out, pr.z0, pr.z1, spec.density, -1.0, r2,
                           &out.inner_area);
  return out;
}

bool GroundTruth::adjacent(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (auto& e : adjacency)
    if (e.first == i && e.second == j) return true;
  return false;
}

std::pair<std::vector<SherdCloud>, GroundTruth> fracture(const PotCloud& pot,
                                                         const FractureOptions& opt,
                                                         const std::string& id_prefix) {
  if (opt.n_sherds < 2) throw std::invalid_argument("fracture needs at least 2 sherds");
  const int n = opt.n_sherds;
  const size_t n_inner = pot.inner.size(), n_outer = pot.outer.size();
  if (n_inner + n_outer == 0) throw std::invalid_argument("empty pot cloud");

  // Estimate shell geometry bounds for site placement on the mid surface.
  double zmin = 1e300, zmax = -1e300;
  for (const auto& q : pot.outer) {
    zmin = std::min(zmin, q.p.z());
    zmax = std::max(zmax, q.p.z());
  }

  std::vector<Vec3> outer_pos(n_outer);
  for (size_t i = 0; i < n_outer; ++i) outer_pos[i] = pot.outer[i].p;
  KdTree outer_tree(outer_pos);

  Rng rng(opt.seed);
  std::vector<Vec3> sites;
  std::vector<int> label_inner(n_inner), label_outer(n_outer);

  auto nearest2 = [&](const Vec3& p, int& first, int& second, double& d1, double& d2) {
    first = second = -1;
    d1 = d2 = 1e300;
    for (int s = 0; s < n; ++s) {
      const double d = (p - sites[s]).squaredNorm();
      if (d < d1) {
        d2 = d1;
        second = first;
        d1 = d;
        first = s;
      } else if (d < d2) {
        d2 = d;
        second = s;
      }
    }
    d1 = std::sqrt(d1);
    d2 = std::sqrt(d2);
  };

  bool ok = false;
  for (int attempt = 0; attempt < opt.max_retries && !ok; ++attempt) {
    // Sites on the outer shell, spread by farthest-point seeding from a
    // random start so cells have comparable size.
    sites.clear();
    sites.push_back(outer_pos[rng.below(n_outer)]);
    while (static_cast<int>(sites.size()) < n) {
      size_t best = 0;
      double best_d = -1;
      // subsample candidates for speed on large clouds
      const size_t stride = std::max<size_t>(1, n_outer / 4096);
      for (size_t i = rng.below(stride); i < n_outer; i += stride) {
        double dmin = 1e300;
        for (const auto& s : sites) dmin = std::min(dmin, (outer_pos[i] - s).squaredNorm());
        if (dmin > best_d) {
          best_d = dmin;
          best = i;
        }
      }
      sites.push_back(outer_pos[best]);
    }

    std::vector<int> counts(n, 0);
    for (size_t i = 0; i < n_inner; ++i) {
      int f, s;
      double d1, d2;
      nearest2(pot.inner[i].p, f, s, d1, d2);
      label_inner[i] = f;
      counts[f]++;
    }
    for (size_t i = 0; i < n_outer; ++i) {
      int f, s;
      double d1, d2;
      nearest2(pot.outer[i].p, f, s, d1, d2);
      label_outer[i] = f;
      counts[f]++;
    }
    ok = *std::min_element(counts.begin(), counts.end()) >= opt.min_cell_points;
  }
  if (!ok) throw std::runtime_error("fracture: a Voronoi cell stayed below the size floor");

  // Mean sample spacing -> wall band width and wall layer spacing.
  double mean_spacing = 0;
  {
    const int probes = std::min<size_t>(512, n_outer);
    for (int i = 0; i < probes; ++i) {
      const auto nb = outer_tree.knn(outer_pos[(i * 7919) % n_outer], 2);
      mean_spacing += (outer_pos[nb[1]] - outer_pos[(i * 7919) % n_outer]).norm();
    }
    mean_spacing /= probes;
  }

  std::vector<SherdCloud> sherds(n);
  GroundTruth gt;
  gt.sherds.resize(n);
  gt.membership.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    std::ostringstream id;
    id << id_prefix << s;
    sherds[s].id = id.str();
    sherds[s].provenance = "synthetic";
    gt.sherds[s].id = id.str();
  }

  // Shell points keep their pot-cloud index for round-trip checks.
  for (size_t i = 0; i < n_inner; ++i) {
    const int s = label_inner[i];
    sherds[s].inner.push_back(static_cast<int>(sherds[s].points.size()));
    sherds[s].points.push_back(pot.inner[i]);
    gt.sherds[s].inner_src.push_back(static_cast<int>(i));
  }
  for (size_t i = 0; i < n_outer; ++i) {
    const int s = label_outer[i];
    sherds[s].outer.push_back(static_cast<int>(sherds[s].points.size()));
    sherds[s].points.push_back(pot.outer[i]);
    gt.sherds[s].outer_src.push_back(static_cast<int>(i));
  }

  // Fracture walls: columns of points between the shells along Voronoi
  // boundaries, found where a shell sample is nearly equidistant to the two
  // closest sites. Walls belong to the nearer cell, normals face the other.
  std::set<std::pair<int, int>> adj;
  const double band = 0.75 * mean_spacing;
  Rng wall_rng = rng.fork(77);
  for (size_t i = 0; i < n_outer; ++i) {
    int f, s;
    double d1, d2;
    nearest2(pot.outer[i].p, f, s, d1, d2);
    if (d2 - d1 > band) continue;
    adj.insert({std::min(f, s), std::max(f, s)});
    const Vec3& po = pot.outer[i].p;
    const double rr = std::hypot(po.x(), po.y());
    if (rr < 1e-9) continue;
    const Vec3 radial(po.x() / rr, po.y() / rr, 0.0);
    Vec3 toward = sites[s] - sites[f];
    toward -= toward.dot(radial) * radial;
    if (toward.norm() < 1e-9) continue;
    toward.normalize();
    // thickness of the shell at this z from the two shells' radial offset
    double wall_depth = 0;
    {
      // nearest inner point tells us the local thickness
      double best = 1e300;
      for (int probe = 0; probe < 1; ++probe) {
        for (size_t j = 0; j < n_inner; j += std::max<size_t>(1, n_inner / 2048)) {
          const double d = (pot.inner[j].p - po).squaredNorm();
          if (d < best) {
            best = d;
            wall_depth = std::sqrt(d);
          }
        }
      }
      wall_depth = std::max(wall_depth, 1.0);
    }
    const int layers = std::max(2, static_cast<int>(std::floor(wall_depth / mean_spacing)));
    for (int l = 1; l < layers; ++l) {
      const double frac = double(l) / layers;
      OrientedPoint w;
      w.p = po - frac * wall_depth * radial;
      w.n = toward;
      // jitter along the wall plane keeps the strip from looking like a grid
      w.p += (wall_rng.uniform() - 0.5) * 0.3 * mean_spacing * toward.cross(radial);
      sherds[f].points.push_back(w);
    }
  }

  gt.adjacency.assign(adj.begin(), adj.end());

  // Random re-posing: ground truth pose maps the sherd's local frame back to
  // the pot frame (p_pot = pose.apply(p_local)).
  for (int s = 0; s < n; ++s) {
    Rng pr = rng.fork(1000 + s);
    RigidTransform to_local;
    to_local.R = pr.rotation();
    to_local.t = Vec3(pr.uniform(-opt.pose_cube / 2, opt.pose_cube / 2),
                      pr.uniform(-opt.pose_cube / 2, opt.pose_cube / 2),
                      pr.uniform(-opt.pose_cube / 2, opt.pose_cube / 2));
    for (auto& q : sherds[s].points) q = to_local.apply(q);
    gt.sherds[s].pose = to_local.inverse();

    if (opt.sigma_pos > 0 || opt.sigma_normal_deg > 0) {
      Rng nr = rng.fork(2000 + s);
      for (auto& q : sherds[s].points) {
        q.p += opt.sigma_pos * nr.gaussian3();
        q.n = perturb_normal(q.n, opt.sigma_normal_deg, nr);
      }
    }
  }
  return {std::move(sherds), std::move(gt)};
}

}  // namespace sherd::synth
