#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "minpose/geometry.hpp"
#include "minpose/metrics.hpp"
#include "minpose/rng.hpp"
#include "minpose/synthetic.hpp"

namespace helpers {

using minpose::LineCorrespondence;
using minpose::Mat3;
using minpose::PointCorrespondence;
using minpose::Pose;
using minpose::RigidTransform;
using minpose::Rng;
using minpose::Vec3;

inline Mat3 random_rotation(Rng& rng) {
  return minpose::rotation_from_axis_angle(rng.unit_vec(), rng.normal());
}

inline RigidTransform random_rigid(Rng& rng) {
  return {random_rotation(rng), Vec3(rng.normal(), rng.normal(), rng.normal())};
}

// Re-expresses a pose after the world data has been moved by X and all
// camera rays rotated by Q: the adjusted pose sees the moved data exactly
// as the original pose saw the original data.
inline Pose adjusted_ground_truth(const Pose& pose, const RigidTransform& X,
                                  const Mat3& Q) {
  const Mat3 R = Q * pose.R * X.R.transpose();
  return {R, Q * pose.T - R * X.t};
}

inline PointCorrespondence move_world(const PointCorrespondence& pc,
                                      const RigidTransform& X) {
  return {X.apply(pc.world_point), pc.bearing};
}

inline LineCorrespondence move_world(const LineCorrespondence& lc,
                                     const RigidTransform& X) {
  return {X.apply(lc.world_a), X.apply(lc.world_b), lc.ray_a, lc.ray_b};
}

// Entrywise distance rather than the angular metric: the arccos of a trace
// quantizes near zero in steps of sqrt(eps), so it cannot certify agreement
// tighter than about 2e-8 even for bit-identical rotations.
inline double pose_distance(const Pose& a, const Pose& b) {
  return (a.R - b.R).norm() + (a.T - b.T).norm();
}

// Smallest rotation error between any solution and the target pose.
inline double best_rotation_error(const std::vector<Pose>& sols,
                                  const Pose& target) {
  double best = M_PI;
  for (const Pose& s : sols)
    best = std::min(best, minpose::rotation_error(s.R, target.R));
  return best;
}

// Minimal distance from the target to any pose in the set.
inline double closest_pose_distance(const std::vector<Pose>& sols,
                                    const Pose& target) {
  double best = std::numeric_limits<double>::infinity();
  for (const Pose& s : sols) best = std::min(best, pose_distance(s, target));
  return best;
}

// Hand-picked world features with the camera at (0,0,-1) looking along +z,
// i.e. ground truth (I, (0,0,1)). Observations are computed consistently.
inline minpose::SyntheticInstance canonical_p2p1l_instance() {
  minpose::SyntheticInstance inst;
  inst.ground_truth = {Mat3::Identity(), Vec3(0.0, 0.0, 1.0)};
  const Vec3 p1(0.1, -0.2, 0.0);
  const Vec3 p2(1.0, 0.3, 0.2);
  const Vec3 l3(-0.4, 1.0, 0.1);
  const Vec3 l4(0.2, 1.3, 1.0);
  auto see = [&](const Vec3& w) {
    return (inst.ground_truth.R * w + inst.ground_truth.T).normalized();
  };
  inst.points.push_back({p1, see(p1)});
  inst.points.push_back({p2, see(p2)});
  inst.lines.push_back({l3, l4, see(l3), see(l4)});
  inst.point_labels = {true, true};
  inst.line_labels = {true};
  return inst;
}

inline minpose::SyntheticInstance canonical_p1p2l_instance() {
  minpose::SyntheticInstance inst;
  inst.ground_truth = {Mat3::Identity(), Vec3(0.0, 0.0, 1.0)};
  const Vec3 p1(0.3, 0.4, 0.0);
  const Vec3 l1(0.0, 1.0, 0.0);
  const Vec3 l2(0.1, 1.05, 1.0);
  const Vec3 l3(1.0, 0.0, 0.0);
  const Vec3 l4(1.2, 1.1, 1.0);
  auto see = [&](const Vec3& w) {
    return (inst.ground_truth.R * w + inst.ground_truth.T).normalized();
  };
  inst.points.push_back({p1, see(p1)});
  inst.lines.push_back({l1, l2, see(l1), see(l2)});
  inst.lines.push_back({l3, l4, see(l3), see(l4)});
  inst.point_labels = {true};
  inst.line_labels = {true, true};
  return inst;
}

}  // namespace helpers
