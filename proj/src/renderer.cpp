#include "gom/renderer.hpp"

#include <algorithm>
#include <cmath>

#include "gom/errors.hpp"

namespace gom {

RayBatch generate_rays(const CameraModel& camera,
                       std::span<const std::pair<int, int>> pixels) {
  const Mat3 r_wc = camera.t_wc.m.topLeftCorner<3, 3>();
  const Vec3 origin = camera.t_wc.m.topRightCorner<3, 1>();
  RayBatch batch;
  batch.rays.reserve(pixels.size());
  for (const auto& [u, v] : pixels) {
    if (u < 0 || u >= camera.width || v < 0 || v >= camera.height) {
      throw PixelOutOfBounds("pixel (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") outside image");
    }
    Vec3 dir_cam((u - camera.cx) / camera.fx, (v - camera.cy) / camera.fy, 1.0);
    const double norm = dir_cam.norm();
    dir_cam /= norm;
    Ray ray;
    ray.origin = origin;
    ray.dir = r_wc * dir_cam;
    ray.depth_cosine = dir_cam.z();  // = 1/norm
    ray.u = u;
    ray.v = v;
    batch.rays.push_back(ray);
  }
  return batch;
}

namespace {

struct ObjectFrameTransform {
  Mat3 r;        // object -> world rotation
  Vec3 t;
  Vec3 s;
  Vec3 inv_s;

  explicit ObjectFrameTransform(const PoseVec9& xi)
      : r(exp_so3(xi.phi)), t(xi.t), s(xi.s), inv_s(xi.s.cwiseInverse()) {
    if (!(xi.s.minCoeff() > 0.0)) {
      throw NonPositiveScale("render: scale components must be positive");
    }
  }
  Vec3 world_to_object(const Vec3& x) const {
    return inv_s.cwiseProduct(r.transpose() * (x - t));
  }
};

void check_ray_bounds(const RenderConfig& cfg) {
  if (!(cfg.near < cfg.far)) {
    throw DegenerateRay("render: near must be below far");
  }
  if (cfg.n_samples < 8) {
    throw DegenerateRay("render: need at least 8 samples per ray");
  }
}

}  // namespace

std::vector<RenderedRay> render(const ShapeDecoder& dec, const VecX& theta,
                                const PoseVec9& t_ow, const RayBatch& rays,
                                const RenderConfig& cfg) {
  const VecX* th = &theta;
  SceneObjectRef ref{&dec, th, t_ow};
  return render_scene_rays(std::span<const SceneObjectRef>(&ref, 1), rays, cfg)
      .rays;
}

SceneRender render_scene_rays(std::span<const SceneObjectRef> objects,
                              const RayBatch& rays, const RenderConfig& cfg) {
  check_ray_bounds(cfg);
  const int n_obj = static_cast<int>(objects.size());
  std::vector<ObjectFrameTransform> tf;
  tf.reserve(n_obj);
  for (const auto& o : objects) tf.emplace_back(o.xi);

  const int n = cfg.n_samples;
  const double delta = (cfg.far - cfg.near) / n;

  SceneRender out;
  out.rays.resize(rays.rays.size());
  out.object_weight = MatX::Zero(static_cast<int>(rays.rays.size()), n_obj);

  std::vector<double> dens(n_obj);
  std::vector<Vec3> cols(n_obj);
  for (size_t ri = 0; ri < rays.rays.size(); ++ri) {
    const Ray& ray = rays.rays[ri];
    double transmittance = 1.0;
    double opacity = 0.0, exp_dist = 0.0;
    Vec3 rgb = Vec3::Zero();
    for (int i = 0; i < n; ++i) {
      const double tau = cfg.near + (i + 0.5) * delta;
      const Vec3 x = ray.origin + tau * ray.dir;
      double total = 0.0;
      for (int o = 0; o < n_obj; ++o) {
        double sdf;
        objects[o].decoder->decode(*objects[o].theta, tf[o].world_to_object(x),
                                   sdf, cols[o]);
        dens[o] = density_from_sdf(sdf, cfg.kappa);
        total += dens[o];
      }
      const double a = 1.0 - std::exp(-total * delta);
      const double w = transmittance * a;
      if (total > 0.0 && w > 0.0) {
        Vec3 mixed = Vec3::Zero();
        for (int o = 0; o < n_obj; ++o) mixed += (dens[o] / total) * cols[o];
        rgb += w * mixed;
        for (int o = 0; o < n_obj; ++o) {
          out.object_weight(static_cast<int>(ri), o) += w * dens[o] / total;
        }
      }
      opacity += w;
      exp_dist += w * tau;
      transmittance *= 1.0 - a;
      if (transmittance < 1e-8) break;
    }
    RenderedRay& rr = out.rays[ri];
    rr.rgb = rgb + (1.0 - opacity) * cfg.background;
    rr.opacity = opacity;
    rr.depth = ray.depth_cosine * exp_dist;
  }
  return out;
}

namespace {

// pixels within `steps` 4-neighborhood dilations of the mask, minus the mask
std::vector<uint8_t> dilate_ring(const ImageMask& mask, int steps) {
  std::vector<uint8_t> cur(mask.data.begin(), mask.data.end());
  std::vector<uint8_t> next = cur;
  const int w = mask.width, h = mask.height;
  for (int s = 0; s < steps; ++s) {
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        if (cur[static_cast<size_t>(v) * w + u]) continue;
        const bool touch = (u > 0 && cur[static_cast<size_t>(v) * w + u - 1]) ||
                           (u + 1 < w && cur[static_cast<size_t>(v) * w + u + 1]) ||
                           (v > 0 && cur[static_cast<size_t>(v - 1) * w + u]) ||
                           (v + 1 < h && cur[static_cast<size_t>(v + 1) * w + u]);
        if (touch) next[static_cast<size_t>(v) * w + u] = 1;
      }
    }
    cur = next;
  }
  for (size_t i = 0; i < cur.size(); ++i) {
    if (mask.data[i]) cur[i] = 0;
  }
  return cur;
}

void sample_pixels(std::vector<std::pair<int, int>>& pool, int quota,
                   std::mt19937_64& rng) {
  quota = std::min<int>(quota, static_cast<int>(pool.size()));
  // partial Fisher-Yates: first `quota` entries become the sample
  for (int i = 0; i < quota; ++i) {
    std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(quota);
}

}  // namespace

RayBatch sample_observation_rays(std::span<const ObservationFrame> frames,
                                 int ray_budget, std::mt19937_64& rng) {
  if (frames.empty() || ray_budget < 1) {
    throw NoValidPixels("sample_observation_rays: no frames or empty budget");
  }
  const int m = static_cast<int>(frames.size());
  RayBatch batch;
  bool any = false;
  for (int f = 0; f < m; ++f) {
    const ObservationFrame& frame = frames[f];
    std::vector<std::pair<int, int>> masked, ring;
    const std::vector<uint8_t> halo = dilate_ring(frame.mask, 3);
    for (int v = 0; v < frame.mask.height; ++v) {
      for (int u = 0; u < frame.mask.width; ++u) {
        if (frame.mask.at(u, v)) {
          masked.emplace_back(u, v);
        } else if (halo[static_cast<size_t>(v) * frame.mask.width + u] &&
                   !(frame.depth.at(u, v) > 0.0)) {
          // free-space pixels just outside the silhouette; valid-depth ones
          // may belong to other geometry and are left alone
          ring.emplace_back(u, v);
        }
      }
    }
    if (masked.empty()) continue;
    any = true;
    const int quota = ray_budget / m + (f < ray_budget % m ? 1 : 0);
    const int ring_quota =
        std::min<int>(quota / 4, static_cast<int>(ring.size()));
    sample_pixels(ring, ring_quota, rng);
    sample_pixels(masked, quota - ring_quota, rng);
    masked.insert(masked.end(), ring.begin(), ring.end());
    RayBatch fb = generate_rays(frame.camera, masked);
    for (auto& ray : fb.rays) {
      ray.frame = f;
      ray.target_rgb = frame.rgb.at(ray.u, ray.v);
      ray.target_depth = frame.depth.at(ray.u, ray.v);
      ray.depth_valid = ray.target_depth > 0.0;
      batch.rays.push_back(ray);
    }
  }
  if (!any || batch.rays.empty()) {
    throw NoValidPixels("sample_observation_rays: no masked pixels");
  }
  return batch;
}

ObsLossResult observation_loss_on_rays(const ShapeDecoder& dec, const VecX& theta,
                                       const PoseVec9& xi, const RayBatch& rays,
                                       const RenderConfig& cfg, bool with_grads) {
  check_ray_bounds(cfg);
  if (rays.rays.empty()) throw NoValidPixels("observation loss: no rays");
  const ObjectFrameTransform tf(xi);
  const Mat3 jr = so3_right_jacobian(xi.phi);
  const int n = cfg.n_samples;
  const double delta = (cfg.far - cfg.near) / n;
  const double w_d = cfg.w_depth();

  ObsLossResult out;
  out.n_rays = static_cast<int>(rays.rays.size());
  out.grad_theta = VecX::Zero(theta.size());

  struct SampleRec {
    double tau, sdf, dens, a, w, trans;
    Vec3 p;       // object-frame point
    Vec3 color;
  };
  std::vector<SampleRec> recs(n);
  DecodeGrads dg;

  double loss = 0.0;
  for (const Ray& ray : rays.rays) {
    double transmittance = 1.0;
    double opacity = 0.0, exp_dist = 0.0;
    Vec3 rgb = Vec3::Zero();
    int used = 0;
    for (int i = 0; i < n; ++i) {
      SampleRec& rec = recs[used];
      rec.tau = cfg.near + (i + 0.5) * delta;
      rec.p = tf.world_to_object(ray.origin + rec.tau * ray.dir);
      dec.decode(theta, rec.p, rec.sdf, rec.color);
      rec.dens = density_from_sdf(rec.sdf, cfg.kappa);
      rec.a = 1.0 - std::exp(-rec.dens * delta);
      rec.trans = transmittance;
      rec.w = transmittance * rec.a;
      opacity += rec.w;
      exp_dist += rec.w * rec.tau;
      rgb += rec.w * rec.color;
      transmittance *= 1.0 - rec.a;
      ++used;
      if (transmittance < 1e-10) break;
    }
    rgb += (1.0 - opacity) * cfg.background;
    const double depth = ray.depth_cosine * exp_dist;

    const Vec3 rgb_err = rgb - ray.target_rgb;
    loss += cfg.w_rgb * rgb_err.squaredNorm();
    double dl_ddist = 0.0;
    if (ray.depth_valid) {
      const double derr = depth - ray.target_depth;
      loss += w_d * derr * derr;
      dl_ddist = 2.0 * w_d * derr * ray.depth_cosine;
    }
    if (!with_grads) continue;

    const Vec3 dl_drgb = 2.0 * cfg.w_rgb * rgb_err;
    // dL/dw_i, then suffix sums for the transmittance coupling
    double suffix = 0.0;  // sum_{j>i} G_j w_j
    std::vector<double> dl_da(used);
    for (int i = used - 1; i >= 0; --i) {
      const SampleRec& rec = recs[i];
      const double g_i =
          dl_drgb.dot(rec.color - cfg.background) + dl_ddist * rec.tau;
      dl_da[i] = g_i * rec.trans - suffix / std::max(1.0 - rec.a, 1e-12);
      suffix += g_i * rec.w;
    }
    for (int i = 0; i < used; ++i) {
      const SampleRec& rec = recs[i];
      const double dl_ddens = dl_da[i] * delta * (1.0 - rec.a);
      const double dl_dsdf =
          dl_ddens * density_sdf_derivative(rec.sdf, cfg.kappa);
      const Vec3 dl_dcolor = rec.w * dl_drgb;
      if (std::abs(dl_dsdf) < 1e-300 && dl_dcolor.cwiseAbs().maxCoeff() < 1e-300)
        continue;
      dec.decode_grad(theta, rec.p, dg);
      out.grad_theta += dl_dsdf * dg.dsdf_dtheta;
      out.grad_theta.noalias() += dg.dcolor_dtheta.transpose() * dl_dcolor;
      // pose chain: object point p = diag(1/s) R^T (x - t)
      const Vec3 dl_dp = dl_dsdf * dg.dsdf_dx + dg.dcolor_dx.transpose() * dl_dcolor;
      const Vec3 g = tf.inv_s.cwiseProduct(dl_dp);
      out.grad_xi.segment<3>(0) -= tf.r * g;
      out.grad_xi.segment<3>(3) -=
          jr.transpose() * (tf.s.cwiseProduct(rec.p).cross(g));
      out.grad_xi.segment<3>(6) -= rec.p.cwiseProduct(g);
    }
  }
  const double inv = 1.0 / out.n_rays;
  out.loss = loss * inv;
  if (with_grads) {
    out.grad_theta *= inv;
    out.grad_xi *= inv;
  }
  return out;
}

ObsLossResult observation_loss(const ShapeDecoder& dec, const VecX& theta,
                               const PoseVec9& xi,
                               std::span<const ObservationFrame> frames,
                               int ray_budget, const RenderConfig& cfg,
                               std::mt19937_64& rng) {
  const RayBatch rays = sample_observation_rays(frames, ray_budget, rng);
  return observation_loss_on_rays(dec, theta, xi, rays, cfg, true);
}

}  // namespace gom
