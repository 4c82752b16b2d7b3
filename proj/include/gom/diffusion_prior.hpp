#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gom/common.hpp"

namespace gom {

// Variance-preserving schedule: alpha_t^2 + sigma_t^2 = 1 for t in 1..t_max,
// built from a linear beta ramp. alpha is monotone nonincreasing.
struct NoiseSchedule {
  int t_max = 0;
  double beta_min = 0.0, beta_max = 0.0;
  VecX beta;   // beta_t, index t-1
  VecX alpha;  // sqrt(prod (1 - beta_i)), index t-1
  VecX sigma;  // sqrt(1 - alpha_t^2), index t-1

  double alpha_at(int t) const { return alpha[t - 1]; }
  double sigma_at(int t) const { return sigma[t - 1]; }
  double beta_at(int t) const { return beta[t - 1]; }
  double alpha_bar_at(int t) const { return t == 0 ? 1.0 : alpha[t - 1] * alpha[t - 1]; }
};

NoiseSchedule schedule_make(int t_max, double beta_min, double beta_max);

// theta_t = alpha_t * theta + sigma_t * eps. Throws TimestampOutOfRange.
VecX forward_noise(const VecX& theta, int t, const VecX& eps,
                   const NoiseSchedule& schedule);

// A conditional noise predictor plus the schedule it was built for.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual int latent_dim() const = 0;
  virtual int n_categories() const = 0;
  virtual const NoiseSchedule& schedule() const = 0;
  // Throws UnknownCategory / TimestampOutOfRange.
  virtual VecX predict_noise(const VecX& theta_t, int category, int t) const = 0;

 protected:
  void check_inputs(const VecX& theta_t, int category, int t) const;
};

struct GmmComponent {
  double weight = 1.0;
  VecX mean;
  VecX var;  // diagonal
};

struct CategoryGmm {
  std::string name;
  std::vector<GmmComponent> components;
};

// Exact Bayes-optimal predictor for latents distributed as a per-category
// diagonal GMM: eps*(x_t) = (x_t - alpha_t E[theta0 | x_t]) / sigma_t.
class GmmDenoiser : public Denoiser {
 public:
  GmmDenoiser(std::vector<CategoryGmm> categories, NoiseSchedule schedule);

  int latent_dim() const override { return dim_; }
  int n_categories() const override { return static_cast<int>(cats_.size()); }
  const NoiseSchedule& schedule() const override { return sched_; }
  VecX predict_noise(const VecX& theta_t, int category, int t) const override;

  VecX posterior_latent_mean(const VecX& theta_t, int category, int t) const;
  VecX mixture_mean(int category) const;
  VecX sample_latent(int category, std::mt19937_64& rng) const;  // exact draw
  // Score of the clean mixture: grad_theta log p(theta | category).
  VecX score(const VecX& theta, int category) const;

  const std::vector<CategoryGmm>& categories() const { return cats_; }

  static GmmDenoiser from_json_file(const std::filesystem::path& path,
                                    const NoiseSchedule& schedule);

 private:
  std::vector<CategoryGmm> cats_;
  NoiseSchedule sched_;
  int dim_;
};

// delta = eps_hat(alpha_t theta + sigma_t eps, c, t) - eps
VecX prior_residual(const Denoiser& den, const VecX& theta, int category, int t,
                    const VecX& eps);

// Average of k residuals at t ~ Uniform{1..T}, eps ~ N(0, I). Points away
// from high prior density; the prior step must subtract it.
VecX prior_gradient(const Denoiser& den, const VecX& theta, int category, int k,
                    std::mt19937_64& rng);

// Ancestral DDPM sampling from theta_T ~ N(0, I).
VecX sample(const Denoiser& den, int category, std::mt19937_64& rng);

// One reverse-process posterior step from theta_t to theta_{t-1}.
VecX direct_diffuse_step(const Denoiser& den, const VecX& theta_t, int category,
                         int t, std::mt19937_64& rng);

// Mean squared residual E ||eps_hat - eps||^2 of a denoiser over a latent
// set, with `draws` (t, eps) pairs per latent. The same rng seed gives a
// paired comparison between two denoisers.
double denoising_mse(const Denoiser& den, const std::vector<VecX>& latents,
                     const std::vector<int>& categories, int draws,
                     std::mt19937_64& rng);

// Two-hidden-layer noise predictor with sinusoidal time embedding and a
// learned category table; trained by SGD with momentum.
class MlpDenoiser : public Denoiser {
 public:
  MlpDenoiser(int dim, int n_categories, int hidden, const NoiseSchedule& sched,
              std::mt19937_64& rng);

  int latent_dim() const override { return dim_; }
  int n_categories() const override { return n_cat_; }
  const NoiseSchedule& schedule() const override { return sched_; }
  VecX predict_noise(const VecX& theta_t, int category, int t) const override;

  static constexpr int kTimeDim = 16;
  static constexpr int kCatDim = 16;

  int hidden() const { return hidden_; }

  // persistence hooks (see save_denoiser / load_denoiser)
  friend void save_denoiser(const std::filesystem::path&, const Denoiser&);
  friend std::unique_ptr<Denoiser> load_denoiser(const std::filesystem::path&);
  friend class MlpTrainer;

 private:
  VecX input_vector(const VecX& theta_t, int category, int t) const;

  int dim_, n_cat_, hidden_;
  NoiseSchedule sched_;
  MatX w1, w2, w3;
  VecX b1, b2, b3;
  MatX cat_embed;  // n_categories x kCatDim
};

struct MlpTrainConfig {
  int hidden = 128;
  int epochs = 40;
  int batch = 64;
  double lr = 5e-3;
  double momentum = 0.9;
  double holdout_fraction = 0.1;
  uint64_t seed = 0;
};

struct MlpTrainResult {
  std::unique_ptr<MlpDenoiser> denoiser;
  std::vector<double> epoch_loss;  // mean train loss per epoch
  double holdout_mse = 0.0;
};

// Requires >= 500 latents per category and dim <= 64 (DatasetTooSmall).
MlpTrainResult train_mlp_denoiser(const std::vector<VecX>& latents,
                                  const std::vector<int>& categories,
                                  const NoiseSchedule& schedule,
                                  const MlpTrainConfig& cfg);

// Versioned binary persistence ("GOMD1", little-endian 64-bit floats).
void save_denoiser(const std::filesystem::path& path, const Denoiser& den);
std::unique_ptr<Denoiser> load_denoiser(const std::filesystem::path& path);

}  // namespace gom
