#pragma once

#include <random>
#include <span>
#include <vector>

#include "gom/image_io.hpp"
#include "gom/lie_pose.hpp"
#include "gom/shape_field.hpp"

namespace gom {

struct RenderConfig {
  int n_samples = 64;          // samples per ray, deterministic bin midpoints
  double near = 0.5;
  double far = 10.0;
  double kappa = 20.0;         // sdf-to-density sharpness
  Vec3 background = Vec3(1.0, 1.0, 1.0);
  double w_rgb = 1.0;
  double depth_scale = 4.0;    // loss weight for depth is 1/depth_scale^2
  double w_depth() const { return 1.0 / (depth_scale * depth_scale); }
};

// One RGB-D view of a single object: boolean instance mask, z-depth map
// (0 = invalid), camera with known world pose.
struct ObservationFrame {
  ImageRgb rgb;
  ImageGray depth;
  ImageMask mask;  // nonzero = this object
  CameraModel camera;
};

struct Ray {
  Vec3 origin = Vec3::Zero();      // world
  Vec3 dir = Vec3::Zero();         // world, unit
  double depth_cosine = 1.0;       // z-depth = depth_cosine * distance
  int u = 0, v = 0;
  int frame = 0;
  Vec3 target_rgb = Vec3::Zero();
  double target_depth = 0.0;
  bool depth_valid = false;
};

struct RayBatch {
  std::vector<Ray> rays;
};

// Rays through the listed pixel centers. Throws PixelOutOfBounds.
RayBatch generate_rays(const CameraModel& camera,
                       std::span<const std::pair<int, int>> pixels);

struct RenderedRay {
  Vec3 rgb = Vec3::Zero();
  double depth = 0.0;    // z-depth in world units, ~0 where nothing was hit
  double opacity = 0.0;
};

// Volume rendering of one object posed by t_ow (object -> world).
std::vector<RenderedRay> render(const ShapeDecoder& dec, const VecX& theta,
                                const PoseVec9& t_ow, const RayBatch& rays,
                                const RenderConfig& cfg);

// Joint rendering of several posed fields (densities add, colors blend by
// density). weight(i, o) is the compositing weight object o received on ray
// i; instance masks derive from its argmax.
struct SceneObjectRef {
  const ShapeDecoder* decoder = nullptr;
  const VecX* theta = nullptr;
  PoseVec9 xi;
};

struct SceneRender {
  std::vector<RenderedRay> rays;
  MatX object_weight;  // n_rays x n_objects
};

SceneRender render_scene_rays(std::span<const SceneObjectRef> objects,
                              const RayBatch& rays, const RenderConfig& cfg);

struct ObsLossResult {
  double loss = 0.0;
  VecX grad_theta;
  Vec9 grad_xi = Vec9::Zero();
  int n_rays = 0;
};

// Uniformly sample up to ray_budget masked pixels, split evenly across
// frames. Throws NoValidPixels when no frame has a masked pixel.
RayBatch sample_observation_rays(std::span<const ObservationFrame> frames,
                                 int ray_budget, std::mt19937_64& rng);

// Mean over rays of w_rgb ||rgb - target||^2 + w_d (depth - target)^2 with
// analytic gradients to the latent and the 9-DoF pose.
ObsLossResult observation_loss_on_rays(const ShapeDecoder& dec, const VecX& theta,
                                       const PoseVec9& xi, const RayBatch& rays,
                                       const RenderConfig& cfg, bool with_grads);

ObsLossResult observation_loss(const ShapeDecoder& dec, const VecX& theta,
                               const PoseVec9& xi,
                               std::span<const ObservationFrame> frames,
                               int ray_budget, const RenderConfig& cfg,
                               std::mt19937_64& rng);

}  // namespace gom
