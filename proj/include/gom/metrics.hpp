#pragma once

#include "gom/icp_init.hpp"
#include "gom/lie_pose.hpp"
#include "gom/shape_field.hpp"

namespace gom {

struct Aabb {
  Vec3 min = Vec3::Zero();
  Vec3 max = Vec3::Zero();
};

// Axis-aligned box of surface samples after mapping them into the world by
// compose_pose(xi).
Aabb world_bbox(const ShapeDecoder& dec, const VecX& theta, const PoseVec9& xi,
                int n_points = 2048, uint64_t seed = 0);

double iou_bbox(const Aabb& a, const Aabb& b);

// Symmetric mean nearest-neighbor distance (unsquared), exhaustive search.
double chamfer(const PointCloud& a, const PointCloud& b);

struct EvalResult {
  double iou = 0.0;
  double cd = 0.0;
};

PointCloud world_surface_cloud(const ShapeDecoder& dec, const VecX& theta,
                               const PoseVec9& xi, int n_points, uint64_t seed);

EvalResult eval_estimate(const ShapeDecoder& dec, const VecX& theta_est,
                         const PoseVec9& xi_est, const VecX& theta_gt,
                         const PoseVec9& xi_gt, int n_points = 4096,
                         uint64_t seed = 0);

}  // namespace gom
