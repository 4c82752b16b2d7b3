#include "gom/mapper.hpp"

#include <cmath>

#include "gom/errors.hpp"
#include "gom/parallel.hpp"
#include "gom/rng.hpp"

namespace gom {

namespace {

constexpr uint64_t kStreamInit = 0x696e6974;
constexpr uint64_t kStreamIcp = 0x696370;
constexpr uint64_t kStreamPrior = 0x7072;
constexpr uint64_t kStreamRays = 0x7261;

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::joint: return "joint";
    case Strategy::optimize_then_diffuse: return "optimize_then_diffuse";
    case Strategy::diffuse_then_optimize: return "diffuse_then_optimize";
    case Strategy::observations_only: return "observations_only";
    case Strategy::direct_diffuse: return "direct_diffuse";
  }
  return "joint";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "joint") return Strategy::joint;
  if (s == "optimize_then_diffuse") return Strategy::optimize_then_diffuse;
  if (s == "diffuse_then_optimize") return Strategy::diffuse_then_optimize;
  if (s == "observations_only") return Strategy::observations_only;
  if (s == "direct_diffuse") return Strategy::direct_diffuse;
  throw ConfigError("unknown strategy: " + s);
}

RenderObservation::RenderObservation(const ShapeDecoder& dec,
                                     std::span<const ObservationFrame> frames,
                                     const RenderConfig& cfg, int ray_budget)
    : dec_(dec), frames_(frames), cfg_(cfg), ray_budget_(ray_budget) {}

void RenderObservation::begin_iteration(std::mt19937_64& rng) {
  current_ = sample_observation_rays(frames_, ray_budget_, rng);
}

double RenderObservation::loss(const VecX& theta, const PoseVec9& xi) const {
  return observation_loss_on_rays(dec_, theta, xi, current_, cfg_, false).loss;
}

double RenderObservation::loss_and_grads(const VecX& theta, const PoseVec9& xi,
                                         VecX& grad_theta, Vec9& grad_xi) const {
  ObsLossResult r = observation_loss_on_rays(dec_, theta, xi, current_, cfg_, true);
  grad_theta = std::move(r.grad_theta);
  grad_xi = r.grad_xi;
  return r.loss;
}

Mapper::Mapper(const Denoiser& den, ObservationModel& obs,
               const MapperConfig& cfg, ProgressFn progress)
    : den_(den), obs_(obs), cfg_(cfg), progress_(std::move(progress)) {
  if (cfg_.j_steps < 0 || cfg_.diffuse_every < 1 || cfg_.k_samples < 1 ||
      !(cfg_.lr > 0.0)) {
    throw ConfigError("MapperConfig: nonpositive step counts or sizes");
  }
  total_diffuse_steps_ =
      (cfg_.j_steps + cfg_.diffuse_every - 1) / cfg_.diffuse_every;
}

ObjectEstimate Mapper::refine_step(const ObjectEstimate& state,
                                   int category) const {
  const int iter = static_cast<int>(state.trace.size());
  bool prior = false, obs = true;
  switch (cfg_.strategy) {
    case Strategy::joint:
    case Strategy::direct_diffuse:
      prior = iter % cfg_.diffuse_every == 0;
      break;
    case Strategy::observations_only:
    case Strategy::diffuse_then_optimize:
      break;
    case Strategy::optimize_then_diffuse: {
      const int n_diffuse = cfg_.j_steps / cfg_.diffuse_every;
      const int n_obs = cfg_.j_steps - n_diffuse;
      prior = iter >= n_obs;
      obs = iter < n_obs;
      break;
    }
  }
  return step_impl(state, category, prior, obs);
}

ObjectEstimate Mapper::step_impl(const ObjectEstimate& state, int category,
                                 bool allow_prior, bool allow_obs) const {
  const int iter = static_cast<int>(state.trace.size());
  ObjectEstimate next = state;
  TraceRow row;
  row.iter = iter;

  if (allow_prior && cfg_.lambda_p != 0.0) {
    std::mt19937_64 rng = make_rng(derive_seed(cfg_.seed, kStreamPrior, iter));
    if (cfg_.strategy == Strategy::direct_diffuse) {
      // one reverse-diffusion step; anneal the timestamp from T down to 1
      const int t_max = den_.schedule().t_max;
      const int n_diffuse = iter / cfg_.diffuse_every;
      const int denom = std::max(1, total_diffuse_steps_ - 1);
      int t = static_cast<int>(std::lround(
          t_max - static_cast<double>(n_diffuse) * (t_max - 1) / denom));
      t = std::clamp(t, 1, t_max);
      const VecX updated = direct_diffuse_step(den_, next.theta, category, t, rng);
      row.prior_grad_norm = (updated - next.theta).norm();
      next.theta = updated;
    } else {
      const VecX g =
          prior_gradient(den_, next.theta, category, cfg_.k_samples, rng);
      row.prior_grad_norm = g.norm();
      next.theta -= cfg_.lambda_p * g;  // descend the smoothed negative log prior
    }
  }

  if (allow_obs) {
    std::mt19937_64 rng = make_rng(derive_seed(cfg_.seed, kStreamRays, iter));
    obs_.begin_iteration(rng);
    VecX g_theta;
    Vec9 g_xi;
    const double loss0 = obs_.loss_and_grads(next.theta, next.xi, g_theta, g_xi);
    row.loss = loss0;

    // scale block steps in log space to keep s positive
    Vec9 dxi = g_xi;
    dxi.segment<3>(6) = g_xi.segment<3>(6).cwiseProduct(next.xi.s);
    row.obs_grad_norm = std::sqrt(g_theta.squaredNorm() + dxi.squaredNorm());

    VecX dtheta = g_theta;
    if (cfg_.normalize_grads) {
      dtheta /= std::max(dtheta.norm(), 1e-12);
      dxi /= std::max(dxi.norm(), 1e-12);
    }

    // trust-region flavored: the accepted scale persists across iterations,
    // shrinking on rejections and creeping back after clean acceptances, so
    // late iterations stop hopping along flat valleys
    const double start =
        state.step_scale > 0.0 ? std::min(state.step_scale, cfg_.lr) : cfg_.lr;
    double step = start;
    bool accepted = false;
    for (int h = 0; h <= cfg_.max_halvings; ++h) {
      const VecX theta_try = next.theta - step * dtheta;
      PoseVec9 xi_try = next.xi;
      xi_try.t -= step * dxi.segment<3>(0);
      xi_try.phi -= step * dxi.segment<3>(3);
      xi_try.s = next.xi.s.cwiseProduct((-step * dxi.segment<3>(6)).array().exp().matrix());
      if (!cfg_.line_search || obs_.loss(theta_try, xi_try) <= loss0 + 1e-15) {
        next.theta = theta_try;
        next.xi = xi_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!cfg_.line_search) {
      next.step_scale = start;
    } else if (!accepted) {
      next.step_scale = std::max(step, 1e-4 * cfg_.lr);
    } else if (step == start) {
      next.step_scale = std::min(1.3 * start, cfg_.lr);
    } else {
      next.step_scale = step;
    }
  } else {
    std::mt19937_64 rng = make_rng(derive_seed(cfg_.seed, kStreamRays, iter));
    obs_.begin_iteration(rng);
    row.loss = obs_.loss(next.theta, next.xi);
  }

  next.trace.push_back(row);
  if (progress_) progress_(row);
  return next;
}

ObjectEstimate Mapper::run(const ObjectEstimate& init, int category) const {
  ObjectEstimate state = init;
  for (int j = 0; j < cfg_.j_steps; ++j) {
    state = refine_step(state, category);
  }
  return state;
}

ObjectEstimate map_object(const ShapeDecoder& dec,
                          std::span<const ObservationFrame> frames, int category,
                          const Denoiser& den, const MapperConfig& cfg,
                          const RenderConfig& render_cfg, ProgressFn progress) {
  ObjectEstimate state;
  std::mt19937_64 rng_init = make_rng(derive_seed(cfg.seed, kStreamInit));
  if (cfg.strategy == Strategy::diffuse_then_optimize) {
    state.theta = sample(den, category, rng_init);
  } else {
    std::normal_distribution<double> normal(0.0, cfg.theta_init_scale);
    state.theta.resize(dec.latent_dim());
    for (int i = 0; i < state.theta.size(); ++i) state.theta[i] = normal(rng_init);
  }
  std::mt19937_64 rng_icp = make_rng(derive_seed(cfg.seed, kStreamIcp));
  state.xi = init_pose(dec, frames, den, category, rng_icp);

  RenderObservation obs(dec, frames, render_cfg, cfg.ray_budget);
  Mapper mapper(den, obs, cfg, std::move(progress));
  return mapper.run(state, category);
}

std::vector<ObjectEstimate> map_scene(const ShapeDecoder& dec,
                                      const SyntheticScene& scene,
                                      const Denoiser& den,
                                      const MapperConfig& cfg,
                                      ProgressFn progress, int jobs) {
  std::vector<ObjectEstimate> estimates(scene.objects.size());
  parallel_for(static_cast<int>(scene.objects.size()), jobs, [&](int k) {
    const std::vector<ObservationFrame> frames = object_views(scene, k);
    MapperConfig obj_cfg = cfg;
    obj_cfg.seed = cfg.seed ^ static_cast<uint64_t>(k);
    estimates[k] = map_object(dec, frames, scene.objects[k].category, den,
                              obj_cfg, scene.spec.render, progress);
  });
  return estimates;
}

std::vector<AblationRow> run_ablation(const ShapeDecoder& dec,
                                      std::span<const SyntheticScene> scenes,
                                      std::span<const Strategy> strategies,
                                      const Denoiser& den,
                                      const MapperConfig& cfg, int jobs) {
  if (scenes.empty()) throw ConfigError("run_ablation: no scenes");
  const int n_scenes = static_cast<int>(scenes.size());
  const int n_strat = static_cast<int>(strategies.size());
  MatX iou(n_strat, n_scenes), cd(n_strat, n_scenes);
  parallel_for(n_strat * n_scenes, jobs, [&](int task) {
    const int si = task / n_scenes;
    const int i = task % n_scenes;
    const SyntheticScene& scene = scenes[i];
    MapperConfig run_cfg = cfg;
    run_cfg.strategy = strategies[si];
    run_cfg.seed = cfg.seed ^ static_cast<uint64_t>(i);
    const std::vector<ObservationFrame> frames = object_views(scene, 0);
    const ObjectEstimate est = map_object(
        dec, frames, scene.objects[0].category, den, run_cfg, scene.spec.render);
    // same sampling convention as the standalone evaluation path
    const EvalResult ev = eval_estimate(dec, est.theta, est.xi,
                                        scene.objects[0].theta,
                                        scene.objects[0].xi, 4096,
                                        derive_seed(run_cfg.seed, 0xe5a1, 0));
    iou(si, i) = ev.iou;
    cd(si, i) = ev.cd;
  });
  std::vector<AblationRow> rows;
  for (int si = 0; si < n_strat; ++si) {
    AblationRow row;
    row.strategy = strategies[si];
    row.n_scenes = n_scenes;
    row.mean_iou = iou.row(si).mean();
    row.mean_cd = cd.row(si).mean();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gom
