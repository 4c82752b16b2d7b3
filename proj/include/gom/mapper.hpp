#pragma once

#include <functional>
#include <optional>
#include <span>

#include "gom/diffusion_prior.hpp"
#include "gom/icp_init.hpp"
#include "gom/metrics.hpp"
#include "gom/renderer.hpp"
#include "gom/scenes_io.hpp"

namespace gom {

enum class Strategy {
  joint,                 // prior step + observation step each iteration window
  optimize_then_diffuse, // all observation steps, then a pure prior pass
  diffuse_then_optimize, // ancestral sample init, then observation-only
  observations_only,     // no prior at all
  direct_diffuse,        // prior step via one-step reverse diffusion
};

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct MapperConfig {
  int j_steps = 200;
  double lr = 0.5;          // observation step size (normalized-gradient units)
  double lambda_p = 0.1;    // prior step size
  int diffuse_every = 2;
  int k_samples = 4;        // residual draws averaged per prior step
  int ray_budget = 1024;
  Strategy strategy = Strategy::joint;
  uint64_t seed = 0;
  double theta_init_scale = 0.1;  // std of the gaussian latent initialization
  // The linear-Gaussian oracle needs plain gradient steps; the rendering
  // pipeline wants normalized steps with backtracking.
  bool normalize_grads = true;
  bool line_search = true;
  int max_halvings = 5;
};

struct TraceRow {
  int iter = 0;
  double loss = 0.0;
  double prior_grad_norm = 0.0;
  double obs_grad_norm = 0.0;
};

struct ObjectEstimate {
  VecX theta;
  PoseVec9 xi;
  std::vector<TraceRow> trace;
  // persistent observation step scale (trust-region style); 0 means "start
  // from MapperConfig::lr"
  double step_scale = 0.0;
};

// Observation term abstraction: the renderer in production, linear models in
// oracle tests. begin_iteration fixes any stochastic choice (ray subset) so
// the line search compares losses on identical data.
class ObservationModel {
 public:
  virtual ~ObservationModel() = default;
  virtual int latent_dim() const = 0;
  virtual void begin_iteration(std::mt19937_64& rng) = 0;
  virtual double loss(const VecX& theta, const PoseVec9& xi) const = 0;
  virtual double loss_and_grads(const VecX& theta, const PoseVec9& xi,
                                VecX& grad_theta, Vec9& grad_xi) const = 0;
};

class RenderObservation : public ObservationModel {
 public:
  RenderObservation(const ShapeDecoder& dec,
                    std::span<const ObservationFrame> frames,
                    const RenderConfig& cfg, int ray_budget);
  int latent_dim() const override { return dec_.latent_dim(); }
  void begin_iteration(std::mt19937_64& rng) override;
  double loss(const VecX& theta, const PoseVec9& xi) const override;
  double loss_and_grads(const VecX& theta, const PoseVec9& xi, VecX& grad_theta,
                        Vec9& grad_xi) const override;

 private:
  const ShapeDecoder& dec_;
  std::span<const ObservationFrame> frames_;
  RenderConfig cfg_;
  int ray_budget_;
  RayBatch current_;
};

using ProgressFn = std::function<void(const TraceRow&)>;

class Mapper {
 public:
  Mapper(const Denoiser& den, ObservationModel& obs, const MapperConfig& cfg,
         ProgressFn progress = nullptr);

  // One Refine iteration: prior step (strategy/cadence permitting) followed
  // by the observation step. The iteration index is the trace length.
  ObjectEstimate refine_step(const ObjectEstimate& state, int category) const;

  // Full run from an explicit initialization.
  ObjectEstimate run(const ObjectEstimate& init, int category) const;

 private:
  ObjectEstimate prior_only_step(const ObjectEstimate& state, int category,
                                 int iter) const;
  ObjectEstimate step_impl(const ObjectEstimate& state, int category,
                           bool allow_prior, bool allow_obs) const;

  const Denoiser& den_;
  ObservationModel& obs_;
  MapperConfig cfg_;
  ProgressFn progress_;
  int total_diffuse_steps_;
};

// Full per-object pipeline: gaussian latent init (or ancestral sample for
// diffuse_then_optimize), ICP pose init, J refine steps.
ObjectEstimate map_object(const ShapeDecoder& dec,
                          std::span<const ObservationFrame> frames, int category,
                          const Denoiser& den, const MapperConfig& cfg,
                          const RenderConfig& render_cfg,
                          ProgressFn progress = nullptr);

// Independent per-object mapping; object k uses seed ^ k. Objects run in
// parallel when jobs > 1 (results are seed-deterministic either way).
std::vector<ObjectEstimate> map_scene(const ShapeDecoder& dec,
                                      const SyntheticScene& scene,
                                      const Denoiser& den,
                                      const MapperConfig& cfg,
                                      ProgressFn progress = nullptr,
                                      int jobs = 1);

struct AblationRow {
  Strategy strategy = Strategy::joint;
  double mean_iou = 0.0;
  double mean_cd = 0.0;
  int n_scenes = 0;
};

// Each strategy mapped over the same scenes with the same seeds; scenes are
// single-object benchmarks evaluated against ground truth.
std::vector<AblationRow> run_ablation(const ShapeDecoder& dec,
                                      std::span<const SyntheticScene> scenes,
                                      std::span<const Strategy> strategies,
                                      const Denoiser& den,
                                      const MapperConfig& cfg, int jobs = 1);

}  // namespace gom
