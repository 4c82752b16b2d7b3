#include "gom/diffusion_prior.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "gom/errors.hpp"

namespace gom {

NoiseSchedule schedule_make(int t_max, double beta_min, double beta_max) {
  if (t_max < 1 || !(beta_min > 0.0) || beta_min > beta_max || !(beta_max < 1.0)) {
    throw BadScheduleParams("schedule_make: need t_max >= 1 and 0 < beta_min <= beta_max < 1");
  }
  NoiseSchedule s;
  s.t_max = t_max;
  s.beta_min = beta_min;
  s.beta_max = beta_max;
  s.beta.resize(t_max);
  s.alpha.resize(t_max);
  s.sigma.resize(t_max);
  double alpha_bar = 1.0;
  for (int t = 1; t <= t_max; ++t) {
    const double frac = t_max == 1 ? 0.0 : static_cast<double>(t - 1) / (t_max - 1);
    const double beta = beta_min + (beta_max - beta_min) * frac;
    alpha_bar *= 1.0 - beta;
    s.beta[t - 1] = beta;
    s.alpha[t - 1] = std::sqrt(alpha_bar);
    s.sigma[t - 1] = std::sqrt(1.0 - alpha_bar);
  }
  return s;
}

static void check_timestamp(int t, const NoiseSchedule& s) {
  if (t < 1 || t > s.t_max) {
    throw TimestampOutOfRange("timestamp " + std::to_string(t) +
                              " outside [1, " + std::to_string(s.t_max) + "]");
  }
}

VecX forward_noise(const VecX& theta, int t, const VecX& eps,
                   const NoiseSchedule& schedule) {
  check_timestamp(t, schedule);
  return schedule.alpha_at(t) * theta + schedule.sigma_at(t) * eps;
}

void Denoiser::check_inputs(const VecX& theta_t, int category, int t) const {
  if (static_cast<int>(theta_t.size()) != latent_dim()) {
    throw LatentSizeMismatch("predict_noise: latent dimension mismatch");
  }
  if (category < 0 || category >= n_categories()) {
    throw UnknownCategory("category " + std::to_string(category));
  }
  check_timestamp(t, schedule());
}

// ---------------------------------------------------------------------------
// GmmDenoiser

GmmDenoiser::GmmDenoiser(std::vector<CategoryGmm> categories, NoiseSchedule schedule)
    : cats_(std::move(categories)), sched_(std::move(schedule)), dim_(0) {
  if (cats_.empty() || cats_[0].components.empty()) {
    throw UnknownCategory("GmmDenoiser: needs at least one category/component");
  }
  dim_ = static_cast<int>(cats_[0].components[0].mean.size());
  for (auto& cat : cats_) {
    double wsum = 0.0;
    for (auto& c : cat.components) {
      if (static_cast<int>(c.mean.size()) != dim_ ||
          static_cast<int>(c.var.size()) != dim_) {
        throw LatentSizeMismatch("GmmDenoiser: component dimension mismatch");
      }
      if (c.var.minCoeff() <= 0.0) {
        throw BadScheduleParams("GmmDenoiser: variances must be positive");
      }
      wsum += c.weight;
    }
    for (auto& c : cat.components) c.weight /= wsum;
  }
}

VecX GmmDenoiser::posterior_latent_mean(const VecX& theta_t, int category,
                                        int t) const {
  check_inputs(theta_t, category, t);
  const double a = sched_.alpha_at(t);
  const double s2 = sched_.sigma_at(t) * sched_.sigma_at(t);
  const auto& comps = cats_[category].components;

  // responsibilities under the noised marginal N(a mu_k, a^2 var_k + s^2)
  Eigen::ArrayXd logr(comps.size());
  for (size_t k = 0; k < comps.size(); ++k) {
    const VecX noisy_var = (a * a) * comps[k].var.array() + s2;
    const VecX diff = theta_t - a * comps[k].mean;
    logr[k] = std::log(comps[k].weight) -
              0.5 * (diff.array().square() / noisy_var.array()).sum() -
              0.5 * noisy_var.array().log().sum();
  }
  logr -= logr.maxCoeff();
  Eigen::ArrayXd r = logr.exp();
  r /= r.sum();

  VecX mean = VecX::Zero(dim_);
  for (size_t k = 0; k < comps.size(); ++k) {
    const Eigen::ArrayXd noisy_var = (a * a) * comps[k].var.array() + s2;
    const Eigen::ArrayXd gain = a * comps[k].var.array() / noisy_var;
    const VecX post = comps[k].mean.array() +
                      gain * (theta_t - a * comps[k].mean).array();
    mean += r[k] * post;
  }
  return mean;
}

VecX GmmDenoiser::predict_noise(const VecX& theta_t, int category, int t) const {
  const VecX e0 = posterior_latent_mean(theta_t, category, t);
  return (theta_t - sched_.alpha_at(t) * e0) / sched_.sigma_at(t);
}

VecX GmmDenoiser::mixture_mean(int category) const {
  if (category < 0 || category >= n_categories()) {
    throw UnknownCategory("category " + std::to_string(category));
  }
  VecX mean = VecX::Zero(dim_);
  for (const auto& c : cats_[category].components) mean += c.weight * c.mean;
  return mean;
}

VecX GmmDenoiser::sample_latent(int category, std::mt19937_64& rng) const {
  if (category < 0 || category >= n_categories()) {
    throw UnknownCategory("category " + std::to_string(category));
  }
  const auto& comps = cats_[category].components;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double pick = uni(rng);
  size_t k = 0;
  for (; k + 1 < comps.size(); ++k) {
    if (pick < comps[k].weight) break;
    pick -= comps[k].weight;
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  VecX out(dim_);
  for (int d = 0; d < dim_; ++d) {
    out[d] = comps[k].mean[d] + std::sqrt(comps[k].var[d]) * normal(rng);
  }
  return out;
}

VecX GmmDenoiser::score(const VecX& theta, int category) const {
  if (category < 0 || category >= n_categories()) {
    throw UnknownCategory("category " + std::to_string(category));
  }
  if (static_cast<int>(theta.size()) != dim_) {
    throw LatentSizeMismatch("score: latent dimension mismatch");
  }
  const auto& comps = cats_[category].components;
  Eigen::ArrayXd logr(comps.size());
  for (size_t k = 0; k < comps.size(); ++k) {
    const VecX diff = theta - comps[k].mean;
    logr[k] = std::log(comps[k].weight) -
              0.5 * (diff.array().square() / comps[k].var.array()).sum() -
              0.5 * comps[k].var.array().log().sum();
  }
  logr -= logr.maxCoeff();
  Eigen::ArrayXd r = logr.exp();
  r /= r.sum();
  VecX g = VecX::Zero(dim_);
  for (size_t k = 0; k < comps.size(); ++k) {
    g -= r[k] * ((theta - comps[k].mean).array() / comps[k].var.array()).matrix();
  }
  return g;
}

GmmDenoiser GmmDenoiser::from_json_file(const std::filesystem::path& path,
                                        const NoiseSchedule& schedule) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("bad GMM json: " + std::string(e.what()));
  }
  std::vector<CategoryGmm> cats;
  try {
    for (const auto& jc : j.at("categories")) {
      CategoryGmm cat;
      cat.name = jc.value("name", "");
      for (const auto& comp : jc.at("components")) {
        GmmComponent g;
        g.weight = comp.at("weight").get<double>();
        const auto mean = comp.at("mean").get<std::vector<double>>();
        const auto var = comp.at("variance").get<std::vector<double>>();
        g.mean = Eigen::Map<const VecX>(mean.data(), mean.size());
        g.var = Eigen::Map<const VecX>(var.data(), var.size());
        cat.components.push_back(std::move(g));
      }
      cats.push_back(std::move(cat));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FileFormatError("bad GMM json: " + std::string(e.what()));
  }
  return GmmDenoiser(std::move(cats), schedule);
}

// ---------------------------------------------------------------------------
// Prior gradient machinery

VecX prior_residual(const Denoiser& den, const VecX& theta, int category, int t,
                    const VecX& eps) {
  const VecX theta_t = forward_noise(theta, t, eps, den.schedule());
  return den.predict_noise(theta_t, category, t) - eps;
}

VecX prior_gradient(const Denoiser& den, const VecX& theta, int category, int k,
                    std::mt19937_64& rng) {
  if (k < 1) throw BadScheduleParams("prior_gradient: k must be >= 1");
  std::uniform_int_distribution<int> t_dist(1, den.schedule().t_max);
  std::normal_distribution<double> normal(0.0, 1.0);
  VecX acc = VecX::Zero(theta.size());
  VecX eps(theta.size());
  for (int i = 0; i < k; ++i) {
    const int t = t_dist(rng);
    for (int d = 0; d < eps.size(); ++d) eps[d] = normal(rng);
    acc += prior_residual(den, theta, category, t, eps);
  }
  return acc / k;
}

// DDPM posterior step shared by sample() and direct_diffuse_step(); the
// injected variance is beta_t (exact for unit-variance data).
static VecX reverse_step(const Denoiser& den, const VecX& x_t, int category,
                         int t, std::mt19937_64& rng) {
  const NoiseSchedule& s = den.schedule();
  const double beta = s.beta_at(t);
  const double abar = s.alpha_bar_at(t);
  const VecX eps_hat = den.predict_noise(x_t, category, t);
  VecX mean = (x_t - (beta / std::sqrt(1.0 - abar)) * eps_hat) / std::sqrt(1.0 - beta);
  if (t > 1) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int d = 0; d < mean.size(); ++d) mean[d] += std::sqrt(beta) * normal(rng);
  }
  return mean;
}

VecX sample(const Denoiser& den, int category, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  VecX x(den.latent_dim());
  for (int d = 0; d < x.size(); ++d) x[d] = normal(rng);
  for (int t = den.schedule().t_max; t >= 1; --t) {
    x = reverse_step(den, x, category, t, rng);
  }
  return x;
}

VecX direct_diffuse_step(const Denoiser& den, const VecX& theta_t, int category,
                         int t, std::mt19937_64& rng) {
  check_timestamp(t, den.schedule());
  return reverse_step(den, theta_t, category, t, rng);
}

double denoising_mse(const Denoiser& den, const std::vector<VecX>& latents,
                     const std::vector<int>& categories, int draws,
                     std::mt19937_64& rng) {
  if (latents.empty()) throw DatasetTooSmall("denoising_mse: empty latent set");
  std::uniform_int_distribution<int> t_dist(1, den.schedule().t_max);
  std::normal_distribution<double> normal(0.0, 1.0);
  double acc = 0.0;
  VecX eps(den.latent_dim());
  for (size_t i = 0; i < latents.size(); ++i) {
    for (int d = 0; d < draws; ++d) {
      const int t = t_dist(rng);
      for (int j = 0; j < eps.size(); ++j) eps[j] = normal(rng);
      acc += prior_residual(den, latents[i], categories[i], t, eps).squaredNorm();
    }
  }
  return acc / (static_cast<double>(latents.size()) * draws);
}

// ---------------------------------------------------------------------------
// Persistence: "GOMD1" + kind byte + schedule + payload, little-endian f64.

namespace {

void put_bytes(std::ostream& out, const void* p, size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}
void put_u32(std::ostream& out, uint32_t v) { put_bytes(out, &v, 4); }
void put_f64(std::ostream& out, double v) { put_bytes(out, &v, 8); }
void put_vec(std::ostream& out, const VecX& v) {
  put_u32(out, static_cast<uint32_t>(v.size()));
  for (int i = 0; i < v.size(); ++i) put_f64(out, v[i]);
}
void put_mat(std::ostream& out, const MatX& m) {
  put_u32(out, static_cast<uint32_t>(m.rows()));
  put_u32(out, static_cast<uint32_t>(m.cols()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
}

void get_bytes(std::istream& in, void* p, size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!in) throw FileFormatError("denoiser file truncated");
}
uint32_t get_u32(std::istream& in) {
  uint32_t v;
  get_bytes(in, &v, 4);
  return v;
}
double get_f64(std::istream& in) {
  double v;
  get_bytes(in, &v, 8);
  return v;
}
VecX get_vec(std::istream& in) {
  const uint32_t n = get_u32(in);
  if (n > (1u << 26)) throw FileFormatError("denoiser file: absurd vector size");
  VecX v(n);
  for (uint32_t i = 0; i < n; ++i) v[i] = get_f64(in);
  return v;
}
MatX get_mat(std::istream& in) {
  const uint32_t r = get_u32(in), c = get_u32(in);
  if (static_cast<uint64_t>(r) * c > (1ull << 26)) {
    throw FileFormatError("denoiser file: absurd matrix size");
  }
  MatX m(r, c);
  for (uint32_t i = 0; i < r; ++i)
    for (uint32_t j = 0; j < c; ++j) m(i, j) = get_f64(in);
  return m;
}

constexpr char kMagic[5] = {'G', 'O', 'M', 'D', '1'};

void put_schedule(std::ostream& out, const NoiseSchedule& s) {
  put_u32(out, static_cast<uint32_t>(s.t_max));
  put_f64(out, s.beta_min);
  put_f64(out, s.beta_max);
}

NoiseSchedule get_schedule(std::istream& in) {
  const int t_max = static_cast<int>(get_u32(in));
  const double bmin = get_f64(in), bmax = get_f64(in);
  return schedule_make(t_max, bmin, bmax);
}

}  // namespace

void save_denoiser(const std::filesystem::path& path, const Denoiser& den) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot write " + path.string());
  put_bytes(out, kMagic, 5);
  if (const auto* gmm = dynamic_cast<const GmmDenoiser*>(&den)) {
    const uint8_t kind = 0;
    put_bytes(out, &kind, 1);
    put_schedule(out, den.schedule());
    put_u32(out, static_cast<uint32_t>(gmm->n_categories()));
    put_u32(out, static_cast<uint32_t>(gmm->latent_dim()));
    for (const auto& cat : gmm->categories()) {
      put_u32(out, static_cast<uint32_t>(cat.components.size()));
      for (const auto& c : cat.components) {
        put_f64(out, c.weight);
        put_vec(out, c.mean);
        put_vec(out, c.var);
      }
    }
  } else if (const auto* mlp = dynamic_cast<const MlpDenoiser*>(&den)) {
    const uint8_t kind = 1;
    put_bytes(out, &kind, 1);
    put_schedule(out, den.schedule());
    put_u32(out, static_cast<uint32_t>(mlp->dim_));
    put_u32(out, static_cast<uint32_t>(mlp->n_cat_));
    put_u32(out, static_cast<uint32_t>(mlp->hidden_));
    put_mat(out, mlp->w1);
    put_vec(out, mlp->b1);
    put_mat(out, mlp->w2);
    put_vec(out, mlp->b2);
    put_mat(out, mlp->w3);
    put_vec(out, mlp->b3);
    put_mat(out, mlp->cat_embed);
  } else {
    throw FileFormatError("save_denoiser: unknown denoiser kind");
  }
  if (!out) throw IoFailure("write failed for " + path.string());
}

std::unique_ptr<Denoiser> load_denoiser(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path.string());
  char magic[5];
  get_bytes(in, magic, 5);
  if (std::memcmp(magic, kMagic, 5) != 0) {
    throw FileFormatError("not a GOMD1 denoiser file: " + path.string());
  }
  uint8_t kind;
  get_bytes(in, &kind, 1);
  NoiseSchedule sched = get_schedule(in);
  if (kind == 0) {
    const uint32_t n_cat = get_u32(in);
    const uint32_t dim = get_u32(in);
    std::vector<CategoryGmm> cats(n_cat);
    for (auto& cat : cats) {
      const uint32_t n_comp = get_u32(in);
      cat.components.resize(n_comp);
      for (auto& c : cat.components) {
        c.weight = get_f64(in);
        c.mean = get_vec(in);
        c.var = get_vec(in);
        if (c.mean.size() != static_cast<int>(dim)) {
          throw FileFormatError("denoiser file: dimension mismatch");
        }
      }
    }
    return std::make_unique<GmmDenoiser>(std::move(cats), std::move(sched));
  }
  if (kind == 1) {
    const int dim = static_cast<int>(get_u32(in));
    const int n_cat = static_cast<int>(get_u32(in));
    const int hidden = static_cast<int>(get_u32(in));
    std::mt19937_64 dummy(0);
    auto mlp = std::make_unique<MlpDenoiser>(dim, n_cat, hidden, sched, dummy);
    mlp->w1 = get_mat(in);
    mlp->b1 = get_vec(in);
    mlp->w2 = get_mat(in);
    mlp->b2 = get_vec(in);
    mlp->w3 = get_mat(in);
    mlp->b3 = get_vec(in);
    mlp->cat_embed = get_mat(in);
    return mlp;
  }
  throw FileFormatError("denoiser file: unknown kind byte");
}

}  // namespace gom
