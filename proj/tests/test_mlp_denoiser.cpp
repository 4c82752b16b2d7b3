#include <doctest.h>

#include "gom/diffusion_prior.hpp"
#include "gom/errors.hpp"
#include "gom/rng.hpp"

using namespace gom;

namespace {

struct GmmDataset {
  std::vector<VecX> latents;
  std::vector<int> categories;
  GmmDenoiser gmm;
};

GmmDataset make_single_gaussian_dataset(int dim, int n, const NoiseSchedule& s,
                                        uint64_t seed) {
  VecX mu(dim);
  for (int d = 0; d < dim; ++d) mu[d] = 0.5 * d - 1.0;
  CategoryGmm cat;
  cat.components.push_back({1.0, mu, VecX::Constant(dim, 1.0)});
  GmmDataset data{{}, {}, GmmDenoiser({cat}, s)};
  std::mt19937_64 rng = make_rng(seed);
  for (int i = 0; i < n; ++i) {
    data.latents.push_back(data.gmm.sample_latent(0, rng));
    data.categories.push_back(0);
  }
  return data;
}

}  // namespace

TEST_SUITE("mlp_denoiser") {

TEST_CASE("dataset preconditions") {
  const NoiseSchedule s = schedule_make(50, 1e-4, 0.2);
  GmmDataset data = make_single_gaussian_dataset(4, 100, s, 1);
  MlpTrainConfig cfg;
  CHECK_THROWS_AS(train_mlp_denoiser(data.latents, data.categories, s, cfg),
                  DatasetTooSmall);

  GmmDataset big = make_single_gaussian_dataset(65, 600, s, 2);
  CHECK_THROWS_AS(train_mlp_denoiser(big.latents, big.categories, s, cfg),
                  DatasetTooSmall);
}

TEST_CASE("zero-epoch network predicts zero noise, mse near D") {
  const NoiseSchedule s = schedule_make(50, 1e-4, 0.2);
  const int dim = 8;
  GmmDataset data = make_single_gaussian_dataset(dim, 600, s, 3);
  MlpTrainConfig cfg;
  cfg.epochs = 0;
  cfg.hidden = 32;
  cfg.seed = 5;
  MlpTrainResult result =
      train_mlp_denoiser(data.latents, data.categories, s, cfg);
  CHECK(result.epoch_loss.empty());
  // zero-initialized output head: prediction is exactly zero
  VecX x = VecX::Constant(dim, 0.7);
  CHECK(result.denoiser->predict_noise(x, 0, 10).norm() == 0.0);
  CHECK(result.holdout_mse == doctest::Approx(static_cast<double>(dim)).epsilon(0.25));
}

TEST_CASE("training approaches the analytic optimum on gaussian data") {
  const NoiseSchedule s = schedule_make(50, 1e-4, 0.2);
  const int dim = 8;
  GmmDataset data = make_single_gaussian_dataset(dim, 1200, s, 7);
  MlpTrainConfig cfg;
  cfg.hidden = 64;
  cfg.epochs = 30;
  cfg.lr = 4e-3;
  cfg.seed = 11;
  MlpTrainResult result =
      train_mlp_denoiser(data.latents, data.categories, s, cfg);

  // paired holdout evaluation against the exact Bayes predictor
  std::vector<VecX> hold(data.latents.end() - 120, data.latents.end());
  std::vector<int> hold_cats(120, 0);
  std::mt19937_64 ra = make_rng(77), rb = make_rng(77);
  const double mse_mlp = denoising_mse(*result.denoiser, hold, hold_cats, 8, ra);
  const double mse_gmm = denoising_mse(data.gmm, hold, hold_cats, 8, rb);
  CHECK(mse_mlp <= 1.15 * mse_gmm);

  // loss trend: nonincreasing within noise, and clearly below the start
  REQUIRE(result.epoch_loss.size() == 30);
  const double slack = 0.03 * result.epoch_loss.front();
  for (size_t i = 1; i < result.epoch_loss.size(); ++i) {
    CHECK(result.epoch_loss[i] <= result.epoch_loss[i - 1] + slack);
  }
  CHECK(result.epoch_loss.back() < 0.5 * result.epoch_loss.front());
}

TEST_CASE("training is deterministic under the seed") {
  const NoiseSchedule s = schedule_make(50, 1e-4, 0.2);
  GmmDataset data = make_single_gaussian_dataset(4, 600, s, 9);
  MlpTrainConfig cfg;
  cfg.hidden = 24;
  cfg.epochs = 3;
  cfg.seed = 21;
  MlpTrainResult a = train_mlp_denoiser(data.latents, data.categories, s, cfg);
  MlpTrainResult b = train_mlp_denoiser(data.latents, data.categories, s, cfg);
  CHECK(a.holdout_mse == b.holdout_mse);
  VecX x = VecX::Constant(4, -0.3);
  CHECK((a.denoiser->predict_noise(x, 0, 25) - b.denoiser->predict_noise(x, 0, 25))
            .norm() == 0.0);
}

TEST_CASE("mlp persistence round trip") {
  const NoiseSchedule s = schedule_make(50, 1e-4, 0.2);
  GmmDataset data = make_single_gaussian_dataset(4, 600, s, 13);
  MlpTrainConfig cfg;
  cfg.hidden = 16;
  cfg.epochs = 2;
  cfg.seed = 31;
  MlpTrainResult result =
      train_mlp_denoiser(data.latents, data.categories, s, cfg);

  const auto dir = std::filesystem::temp_directory_path() / "gom_test_mlp";
  std::filesystem::create_directories(dir);
  const auto path = dir / "mlp.gomd";
  save_denoiser(path, *result.denoiser);
  const auto loaded = load_denoiser(path);
  CHECK(loaded->latent_dim() == 4);
  VecX x(4);
  x << 0.1, -0.2, 0.3, 1.0;
  for (int t : {1, 20, 50}) {
    CHECK((loaded->predict_noise(x, 0, t) -
           result.denoiser->predict_noise(x, 0, t))
              .norm() == 0.0);
  }
}

}  // TEST_SUITE
