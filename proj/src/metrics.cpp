#include "gom/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "gom/errors.hpp"
#include "gom/rng.hpp"

namespace gom {

PointCloud world_surface_cloud(const ShapeDecoder& dec, const VecX& theta,
                               const PoseVec9& xi, int n_points, uint64_t seed) {
  std::mt19937_64 rng = make_rng(derive_seed(seed, 0x73757266));
  const MatX pts = sample_surface_points(dec, theta, n_points, rng);
  const PoseMatrix t = compose_pose(xi);
  PointCloud cloud;
  cloud.points.reserve(n_points);
  for (int i = 0; i < pts.rows(); ++i) {
    cloud.points.push_back(transform_point(t, pts.row(i).transpose()));
  }
  return cloud;
}

Aabb world_bbox(const ShapeDecoder& dec, const VecX& theta, const PoseVec9& xi,
                int n_points, uint64_t seed) {
  const PointCloud cloud = world_surface_cloud(dec, theta, xi, n_points, seed);
  Aabb box;
  box.min = box.max = cloud.points[0];
  for (const Vec3& p : cloud.points) {
    box.min = box.min.cwiseMin(p);
    box.max = box.max.cwiseMax(p);
  }
  return box;
}

double iou_bbox(const Aabb& a, const Aabb& b) {
  const Vec3 lo = a.min.cwiseMax(b.min);
  const Vec3 hi = a.max.cwiseMin(b.max);
  const Vec3 inter_edges = (hi - lo).cwiseMax(0.0);
  const double inter = inter_edges.prod();
  const double vol_a = (a.max - a.min).cwiseMax(0.0).prod();
  const double vol_b = (b.max - b.min).cwiseMax(0.0).prod();
  const double uni = vol_a + vol_b - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

double chamfer(const PointCloud& a, const PointCloud& b) {
  if (a.points.empty() || b.points.empty()) {
    throw EmptyCloud("chamfer: empty cloud");
  }
  const auto one_sided = [](const PointCloud& from, const PointCloud& to) {
    double acc = 0.0;
    for (const Vec3& p : from.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec3& q : to.points) {
        best = std::min(best, (p - q).squaredNorm());
      }
      acc += std::sqrt(best);
    }
    return acc / static_cast<double>(from.points.size());
  };
  return 0.5 * (one_sided(a, b) + one_sided(b, a));
}

EvalResult eval_estimate(const ShapeDecoder& dec, const VecX& theta_est,
                         const PoseVec9& xi_est, const VecX& theta_gt,
                         const PoseVec9& xi_gt, int n_points, uint64_t seed) {
  const PointCloud est =
      world_surface_cloud(dec, theta_est, xi_est, n_points, derive_seed(seed, 1));
  const PointCloud gt =
      world_surface_cloud(dec, theta_gt, xi_gt, n_points, derive_seed(seed, 2));
  Aabb box_est, box_gt;
  box_est.min = box_est.max = est.points[0];
  for (const Vec3& p : est.points) {
    box_est.min = box_est.min.cwiseMin(p);
    box_est.max = box_est.max.cwiseMax(p);
  }
  box_gt.min = box_gt.max = gt.points[0];
  for (const Vec3& p : gt.points) {
    box_gt.min = box_gt.min.cwiseMin(p);
    box_gt.max = box_gt.max.cwiseMax(p);
  }
  EvalResult r;
  r.iou = iou_bbox(box_est, box_gt);
  r.cd = chamfer(est, gt);
  return r;
}

}  // namespace gom
