#include "gom/icp_init.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "gom/errors.hpp"

namespace gom {

PointCloud backproject(std::span<const ObservationFrame> frames) {
  PointCloud cloud;
  for (const ObservationFrame& f : frames) {
    const Mat3 r_wc = f.camera.t_wc.m.topLeftCorner<3, 3>();
    const Vec3 t_wc = f.camera.t_wc.m.topRightCorner<3, 1>();
    for (int v = 0; v < f.depth.height; ++v) {
      for (int u = 0; u < f.depth.width; ++u) {
        if (!f.mask.at(u, v)) continue;
        const double d = f.depth.at(u, v);
        if (!(d > 0.0)) continue;
        const Vec3 p_cam((u - f.camera.cx) * d / f.camera.fx,
                         (v - f.camera.cy) * d / f.camera.fy, d);
        cloud.points.push_back(r_wc * p_cam + t_wc);
      }
    }
  }
  if (cloud.points.empty()) {
    throw NoValidPixels("backproject: no masked pixels with valid depth");
  }
  return cloud;
}

PoseVec9 umeyama_align(const PointCloud& src, const PointCloud& dst) {
  const size_t n = src.points.size();
  if (n != dst.points.size() || n < 3) {
    throw DegenerateConfiguration("umeyama_align: need matched clouds of >= 3 points");
  }
  Vec3 mu_src = Vec3::Zero(), mu_dst = Vec3::Zero();
  for (size_t i = 0; i < n; ++i) {
    mu_src += src.points[i];
    mu_dst += dst.points[i];
  }
  mu_src /= static_cast<double>(n);
  mu_dst /= static_cast<double>(n);

  Mat3 cov = Mat3::Zero();
  double src_var = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec3 a = src.points[i] - mu_src;
    const Vec3 b = dst.points[i] - mu_dst;
    cov += b * a.transpose();
    src_var += a.squaredNorm();
  }
  cov /= static_cast<double>(n);
  src_var /= static_cast<double>(n);
  if (src_var < 1e-15) {
    throw DegenerateConfiguration("umeyama_align: source cloud has no spread");
  }

  Eigen::JacobiSVD<Mat3> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 d = svd.singularValues();
  if (d[1] < 1e-12 * std::max(1.0, d[0])) {
    throw DegenerateConfiguration("umeyama_align: covariance rank below 2");
  }
  Vec3 flip = Vec3::Ones();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) {
    flip[2] = -1.0;
  }
  const Mat3 r = svd.matrixU() * flip.asDiagonal() * svd.matrixV().transpose();
  const double scale = d.dot(flip) / src_var;
  if (!(scale > 0.0)) {
    throw DegenerateConfiguration("umeyama_align: nonpositive scale");
  }
  PoseVec9 xi;
  xi.phi = log_so3(r);
  xi.s = Vec3::Constant(scale);
  xi.t = mu_dst - scale * (r * mu_src);
  return xi;
}

namespace {

PointCloud subsample(const PointCloud& in, size_t cap) {
  if (in.points.size() <= cap) return in;
  PointCloud out;
  out.points.reserve(cap);
  const double stride = static_cast<double>(in.points.size()) / cap;
  for (size_t i = 0; i < cap; ++i) {
    out.points.push_back(in.points[static_cast<size_t>(i * stride)]);
  }
  return out;
}

}  // namespace

IcpResult icp_align(const PointCloud& src_in, const PointCloud& dst_in,
                    const PoseVec9& init, int max_iters, double tol) {
  if (src_in.points.size() < 3 || dst_in.points.size() < 3) {
    throw DegenerateConfiguration("icp_align: clouds need >= 3 points");
  }
  const PointCloud src = subsample(src_in, 4096);
  const PointCloud dst = subsample(dst_in, 4096);

  IcpResult result;
  result.pose = init;
  double prev_rmse = std::numeric_limits<double>::infinity();
  PointCloud matched;
  matched.points.resize(src.points.size());
  for (int iter = 0; iter < max_iters; ++iter) {
    const PoseMatrix t = compose_pose(result.pose);
    double sse = 0.0;
    for (size_t i = 0; i < src.points.size(); ++i) {
      const Vec3 p = transform_point(t, src.points[i]);
      double best = std::numeric_limits<double>::infinity();
      size_t best_j = 0;
      for (size_t j = 0; j < dst.points.size(); ++j) {
        const double d2 = (dst.points[j] - p).squaredNorm();
        if (d2 < best) {
          best = d2;
          best_j = j;
        }
      }
      matched.points[i] = dst.points[best_j];
      sse += best;
    }
    result.rmse = std::sqrt(sse / static_cast<double>(src.points.size()));
    result.rmse_trace.push_back(result.rmse);
    result.iterations = iter + 1;
    if (prev_rmse - result.rmse < tol) break;
    prev_rmse = result.rmse;
    result.pose = umeyama_align(src, matched);
  }
  return result;
}

PoseVec9 init_pose(const ShapeDecoder& dec,
                   std::span<const ObservationFrame> frames, const Denoiser& den,
                   int category, std::mt19937_64& rng) {
  PointCloud observed;
  try {
    observed = backproject(frames);
  } catch (const NoValidPixels&) {
    return PoseVec9::identity();  // nothing to align against
  }
  if (observed.points.size() < 3) {
    return PoseVec9::identity();
  }

  VecX prior_latent;
  if (const auto* gmm = dynamic_cast<const GmmDenoiser*>(&den)) {
    prior_latent = gmm->mixture_mean(category);
  } else {
    prior_latent = sample(den, category, rng);
  }
  const MatX samples = sample_surface_points(dec, prior_latent, 1024, rng);
  PointCloud model;
  model.points.reserve(samples.rows());
  for (int i = 0; i < samples.rows(); ++i) {
    model.points.push_back(samples.row(i).transpose());
  }

  // seed translation/scale from centroids and bounding extents
  Vec3 lo_m = model.points[0], hi_m = model.points[0];
  Vec3 lo_o = observed.points[0], hi_o = observed.points[0];
  Vec3 mu_m = Vec3::Zero(), mu_o = Vec3::Zero();
  for (const Vec3& p : model.points) {
    lo_m = lo_m.cwiseMin(p);
    hi_m = hi_m.cwiseMax(p);
    mu_m += p;
  }
  for (const Vec3& p : observed.points) {
    lo_o = lo_o.cwiseMin(p);
    hi_o = hi_o.cwiseMax(p);
    mu_o += p;
  }
  mu_m /= static_cast<double>(model.points.size());
  mu_o /= static_cast<double>(observed.points.size());
  const double extent_m = (hi_m - lo_m).norm();
  const double extent_o = (hi_o - lo_o).norm();

  // the observed cloud covers only part of the surface, so correspondences
  // run observed -> model (every depth point lies on the model) and the
  // world->object result is inverted afterwards; a few yaw starts avoid the
  // nearest local basin
  const double c = extent_o > 1e-9 ? std::max(extent_m / extent_o, 1e-3) : 1.0;
  PoseVec9 world_to_object;
  double best_rmse = std::numeric_limits<double>::infinity();
  bool found = false;
  for (const double yaw_deg : {-25.0, 0.0, 25.0}) {
    PoseVec9 guess;
    guess.phi = Vec3(0.0, 0.0, yaw_deg * kPi / 180.0);
    guess.s = Vec3::Constant(c);
    guess.t = mu_m - c * (exp_so3(guess.phi) * mu_o);
    const IcpResult result = icp_align(observed, model, guess);
    // scale-ICP can shrink a partial cloud into the target; reject runs
    // that drift far from the extent-ratio seed
    const bool sane = result.pose.s[0] > c / 1.6 && result.pose.s[0] < c * 1.6;
    if (sane && result.rmse < best_rmse) {
      best_rmse = result.rmse;
      world_to_object = result.pose;
      found = true;
    }
  }
  if (!found) {
    PoseVec9 guess;
    guess.s = Vec3::Constant(c);
    guess.t = mu_m - c * mu_o;
    world_to_object = icp_align(observed, model, guess).pose;
  }

  PoseVec9 pose;
  const double inv_s = 1.0 / world_to_object.s[0];
  const Mat3 r_t = exp_so3(world_to_object.phi).transpose();
  pose.phi = log_so3(r_t);
  pose.s = Vec3::Constant(inv_s);
  pose.t = -inv_s * (r_t * world_to_object.t);
  return pose;
}

}  // namespace gom
