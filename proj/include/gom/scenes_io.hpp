#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "gom/diffusion_prior.hpp"
#include "gom/renderer.hpp"

namespace gom {

struct NoiseModel {
  double depth_sigma = 0.0;  // additive gaussian on valid depth
  double dropout_p = 0.0;    // per-pixel depth dropout
  int mask_erosion = 0;      // erosion passes on the instance mask
};

enum class Trajectory { one_sided_arc, ring_360 };

std::string to_string(Trajectory t);
Trajectory trajectory_from_string(const std::string& s);

// Which decoder a scene's latents belong to; stored in the manifest so a
// mapping run can rebuild it.
struct DecoderSpec {
  std::string kind = "blob";  // "blob" or "grid"
  int blobs = 4;
  double beta_smooth = 8.0;
  int grid_resolution = 16;
  double grid_extent = 1.2;
};

std::unique_ptr<ShapeDecoder> make_decoder(const DecoderSpec& spec);

struct SceneSpec {
  uint64_t seed = 0;
  int n_objects = 1;
  std::vector<int> categories;  // cycled over objects; empty = all prior cats
  Trajectory trajectory = Trajectory::ring_360;
  int n_views = 3;
  NoiseModel noise;
  int occluders = 0;
  int image_size = 64;
  double camera_radius = 4.5;
  RenderConfig render;
  DecoderSpec decoder;
};

struct SceneObjectGt {
  VecX theta;
  PoseVec9 xi;
  int category = 0;
};

// One rendered view: full-precision RGB/depth plus the instance-id mask
// (0 = background, k+1 = tracked object k; occluders stay unlabelled).
struct SceneFrame {
  ImageRgb rgb;
  ImageGray depth;
  ImageMask mask_ids;
  CameraModel camera;
};

struct SyntheticScene {
  SceneSpec spec;
  std::vector<SceneObjectGt> objects;
  std::vector<SceneObjectGt> occluders;
  std::vector<SceneFrame> frames;
};

// Ground-truth latents come from the prior; poses are rejection-sampled to
// bound box overlap. Throws PlacementFailure when placement keeps failing.
SyntheticScene sample_scene(const SceneSpec& spec, const GmmDenoiser& prior,
                            const ShapeDecoder& dec);

// Re-render the ground truth state (no noise); used by tests and mask tools.
std::vector<SceneFrame> render_scene_frames(const SyntheticScene& scene,
                                            const ShapeDecoder& dec);

// Single-object observation extracted from a scene frame.
ObservationFrame object_view(const SceneFrame& frame, int object_index);
std::vector<ObservationFrame> object_views(const SyntheticScene& scene,
                                           int object_index);

// Directory layout: manifest.json + frames/NNN.{ppm,pfm,pgm}.
void save_scene(const SyntheticScene& scene, const std::filesystem::path& dir);
SyntheticScene load_scene(const std::filesystem::path& dir);

// Desk-scale category priors over blob latents (single diagonal Gaussian per
// category around a hand-built prototype shape).
GmmDenoiser make_category_blob_prior(const NoiseSchedule& schedule,
                                     const BlobFieldDecoder& dec);

}  // namespace gom
