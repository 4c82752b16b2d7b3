#pragma once

#include <random>
#include <span>
#include <vector>

#include "gom/diffusion_prior.hpp"
#include "gom/renderer.hpp"

namespace gom {

struct PointCloud {
  std::vector<Vec3> points;
};

// Masked valid-depth pixels back-projected to world coordinates.
// Throws NoValidPixels.
PointCloud backproject(std::span<const ObservationFrame> frames);

// Closed-form least-squares similarity (uniform scale) mapping src onto dst
// under known one-to-one correspondence. Throws DegenerateConfiguration when
// the source covariance drops below rank 2.
PoseVec9 umeyama_align(const PointCloud& src, const PointCloud& dst);

struct IcpResult {
  PoseVec9 pose;
  double rmse = 0.0;
  int iterations = 0;
  std::vector<double> rmse_trace;
};

// Point-to-point ICP with exhaustive nearest neighbors; clouds above 4096
// points are subsampled. Per-iteration rmse is nonincreasing.
IcpResult icp_align(const PointCloud& src, const PointCloud& dst,
                    const PoseVec9& init, int max_iters = 50, double tol = 1e-6);

// Coarse 9-DoF pose: align surface samples of the category's prior shape
// (mixture mean for a GMM prior, an ancestral sample otherwise) to the
// back-projected depth cloud.
PoseVec9 init_pose(const ShapeDecoder& dec,
                   std::span<const ObservationFrame> frames, const Denoiser& den,
                   int category, std::mt19937_64& rng);

}  // namespace gom
