#include <cmath>
#include <numeric>

#include "gom/diffusion_prior.hpp"
#include "gom/errors.hpp"
#include "gom/rng.hpp"

namespace gom {

namespace {

VecX time_embedding(int t, int dim) {
  VecX emb(dim);
  const int half = dim / 2;
  for (int i = 0; i < half; ++i) {
    const double freq = std::exp(-std::log(10000.0) * i / half);
    emb[2 * i] = std::sin(t * freq);
    emb[2 * i + 1] = std::cos(t * freq);
  }
  return emb;
}

}  // namespace

MlpDenoiser::MlpDenoiser(int dim, int n_categories, int hidden,
                         const NoiseSchedule& sched, std::mt19937_64& rng)
    : dim_(dim), n_cat_(n_categories), hidden_(hidden), sched_(sched) {
  const int in_dim = dim_ + kTimeDim + kCatDim;
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto init = [&](MatX& m, int rows, int cols, double scale) {
    m.resize(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = scale * normal(rng);
  };
  init(w1, hidden_, in_dim, std::sqrt(1.0 / in_dim));
  init(w2, hidden_, hidden_, std::sqrt(1.0 / hidden_));
  w3 = MatX::Zero(dim_, hidden_);  // untrained net predicts zero noise
  b1 = VecX::Zero(hidden_);
  b2 = VecX::Zero(hidden_);
  b3 = VecX::Zero(dim_);
  init(cat_embed, n_cat_, kCatDim, 1.0);
}

VecX MlpDenoiser::input_vector(const VecX& theta_t, int category, int t) const {
  VecX in(dim_ + kTimeDim + kCatDim);
  in.head(dim_) = theta_t;
  in.segment(dim_, kTimeDim) = time_embedding(t, kTimeDim);
  in.tail(kCatDim) = cat_embed.row(category).transpose();
  return in;
}

VecX MlpDenoiser::predict_noise(const VecX& theta_t, int category, int t) const {
  check_inputs(theta_t, category, t);
  const VecX in = input_vector(theta_t, category, t);
  const VecX h1 = (w1 * in + b1).array().tanh();
  const VecX h2 = (w2 * h1 + b2).array().tanh();
  return w3 * h2 + b3;
}

// ---------------------------------------------------------------------------
// Training

class MlpTrainer {
 public:
  static MlpTrainResult run(const std::vector<VecX>& latents,
                            const std::vector<int>& categories,
                            const NoiseSchedule& schedule,
                            const MlpTrainConfig& cfg) {
    if (latents.size() != categories.size() || latents.empty()) {
      throw DatasetTooSmall("train_mlp_denoiser: empty or mismatched dataset");
    }
    const int dim = static_cast<int>(latents[0].size());
    if (dim > 64) {
      throw DatasetTooSmall("train_mlp_denoiser: latent dimension above 64");
    }
    const int n_cat = 1 + *std::max_element(categories.begin(), categories.end());
    std::vector<int> per_cat(n_cat, 0);
    for (size_t i = 0; i < latents.size(); ++i) {
      if (static_cast<int>(latents[i].size()) != dim) {
        throw LatentSizeMismatch("train_mlp_denoiser: ragged latents");
      }
      per_cat[categories[i]]++;
    }
    for (int c = 0; c < n_cat; ++c) {
      if (per_cat[c] < 500) {
        throw DatasetTooSmall("train_mlp_denoiser: category " + std::to_string(c) +
                              " has " + std::to_string(per_cat[c]) +
                              " latents (need >= 500)");
      }
    }

    std::mt19937_64 rng = make_rng(derive_seed(cfg.seed, 0x6d6c70));
    MlpTrainResult result;
    result.denoiser = std::make_unique<MlpDenoiser>(dim, n_cat, cfg.hidden,
                                                    schedule, rng);
    MlpDenoiser& net = *result.denoiser;

    // train/holdout split
    std::vector<int> order(latents.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const size_t n_hold =
        std::max<size_t>(1, static_cast<size_t>(cfg.holdout_fraction * order.size()));
    std::vector<int> hold(order.begin(), order.begin() + n_hold);
    std::vector<int> train(order.begin() + n_hold, order.end());

    const int in_dim = dim + MlpDenoiser::kTimeDim + MlpDenoiser::kCatDim;
    MatX vw1 = MatX::Zero(net.w1.rows(), net.w1.cols());
    MatX vw2 = MatX::Zero(net.w2.rows(), net.w2.cols());
    MatX vw3 = MatX::Zero(net.w3.rows(), net.w3.cols());
    VecX vb1 = VecX::Zero(net.b1.size());
    VecX vb2 = VecX::Zero(net.b2.size());
    VecX vb3 = VecX::Zero(net.b3.size());
    MatX vcat = MatX::Zero(net.cat_embed.rows(), net.cat_embed.cols());

    std::uniform_int_distribution<int> t_dist(1, schedule.t_max);
    std::normal_distribution<double> normal(0.0, 1.0);

    MatX x(in_dim, cfg.batch), target(dim, cfg.batch);
    std::vector<int> batch_cat(cfg.batch);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
      std::shuffle(train.begin(), train.end(), rng);
      double epoch_loss = 0.0;
      int n_batches = 0;
      for (size_t start = 0; start + cfg.batch <= train.size();
           start += cfg.batch) {
        for (int b = 0; b < cfg.batch; ++b) {
          const int idx = train[start + b];
          const int t = t_dist(rng);
          VecX eps(dim);
          for (int d = 0; d < dim; ++d) eps[d] = normal(rng);
          const VecX theta_t = forward_noise(latents[idx], t, eps, schedule);
          x.col(b) = net.input_vector(theta_t, categories[idx], t);
          target.col(b) = eps;
          batch_cat[b] = categories[idx];
        }
        // forward
        const MatX h1 = ((net.w1 * x).colwise() + net.b1).array().tanh();
        const MatX h2 = ((net.w2 * h1).colwise() + net.b2).array().tanh();
        const MatX y = (net.w3 * h2).colwise() + net.b3;
        const MatX diff = y - target;
        epoch_loss += diff.squaredNorm() / cfg.batch;
        n_batches++;
        // backward
        const MatX dy = (2.0 / cfg.batch) * diff;
        const MatX dw3 = dy * h2.transpose();
        const VecX db3 = dy.rowwise().sum();
        const MatX dh2 = (net.w3.transpose() * dy).array() * (1.0 - h2.array().square());
        const MatX dw2 = dh2 * h1.transpose();
        const VecX db2 = dh2.rowwise().sum();
        const MatX dh1 = (net.w2.transpose() * dh2).array() * (1.0 - h1.array().square());
        const MatX dw1 = dh1 * x.transpose();
        const VecX db1 = dh1.rowwise().sum();
        const MatX dx = net.w1.transpose() * dh1;
        MatX dcat = MatX::Zero(net.cat_embed.rows(), net.cat_embed.cols());
        for (int b = 0; b < cfg.batch; ++b) {
          dcat.row(batch_cat[b]) +=
              dx.col(b).segment(dim + MlpDenoiser::kTimeDim, MlpDenoiser::kCatDim)
                  .transpose();
        }
        // SGD with momentum
        const auto step = [&](auto& v, auto& w, const auto& g) {
          v = cfg.momentum * v - cfg.lr * g;
          w += v;
        };
        step(vw1, net.w1, dw1);
        step(vb1, net.b1, db1);
        step(vw2, net.w2, dw2);
        step(vb2, net.b2, db2);
        step(vw3, net.w3, dw3);
        step(vb3, net.b3, db3);
        step(vcat, net.cat_embed, dcat);
      }
      result.epoch_loss.push_back(n_batches ? epoch_loss / n_batches
                                            : std::numeric_limits<double>::quiet_NaN());
    }

    std::vector<VecX> hold_latents;
    std::vector<int> hold_cats;
    for (int idx : hold) {
      hold_latents.push_back(latents[idx]);
      hold_cats.push_back(categories[idx]);
    }
    std::mt19937_64 eval_rng = make_rng(derive_seed(cfg.seed, 0x6576616c));
    result.holdout_mse = denoising_mse(net, hold_latents, hold_cats, 8, eval_rng);
    return result;
  }
};

MlpTrainResult train_mlp_denoiser(const std::vector<VecX>& latents,
                                  const std::vector<int>& categories,
                                  const NoiseSchedule& schedule,
                                  const MlpTrainConfig& cfg) {
  return MlpTrainer::run(latents, categories, schedule, cfg);
}

}  // namespace gom
