#include "gom/shape_field.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "gom/errors.hpp"
#include "marching_cubes_tables.hpp"

namespace gom {

namespace {

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double softplus(double z) {
  if (z > 30.0) return z;
  return std::log1p(std::exp(z));
}

double softplus_inverse(double y) {
  if (y > 30.0) return y;
  return std::log(std::expm1(y));
}

double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

double density_from_sdf(double sdf, double kappa) {
  return kappa * logistic(-kappa * sdf);
}

double density_sdf_derivative(double sdf, double kappa) {
  const double l = logistic(-kappa * sdf);
  return -kappa * kappa * l * (1.0 - l);
}

void ShapeDecoder::check_latent(const VecX& theta) const {
  if (static_cast<int>(theta.size()) != latent_dim()) {
    throw LatentSizeMismatch("latent size " + std::to_string(theta.size()) +
                             " does not match decoder dimension " +
                             std::to_string(latent_dim()));
  }
}

FieldSample decode(const ShapeDecoder& dec, const VecX& theta, const Vec3& x,
                   double kappa) {
  FieldSample out;
  dec.decode(theta, x, out.sdf, out.color);
  out.density = density_from_sdf(out.sdf, kappa);
  return out;
}

// ---------------------------------------------------------------------------
// BlobFieldDecoder

BlobFieldDecoder::BlobFieldDecoder(int n_blobs, double beta_smooth)
    : n_blobs_(n_blobs), beta_smooth_(beta_smooth) {}

Eigen::AlignedBox3d BlobFieldDecoder::bounds() const {
  return {Vec3(-1.6, -1.6, -1.6), Vec3(1.6, 1.6, 1.6)};
}

void BlobFieldDecoder::decode(const VecX& theta, const Vec3& x, double& sdf,
                              Vec3& color) const {
  check_latent(theta);
  const double beta = beta_smooth_;
  double m = std::numeric_limits<double>::infinity();
  Eigen::ArrayXd sdfs(n_blobs_);
  for (int i = 0; i < n_blobs_; ++i) {
    const Vec3 c = theta.segment<3>(7 * i);
    const double r = softplus(theta[7 * i + 3]);
    sdfs[i] = (x - c).norm() - r;
    m = std::min(m, sdfs[i]);
  }
  double z = 0.0;
  color.setZero();
  Eigen::ArrayXd w(n_blobs_);
  for (int i = 0; i < n_blobs_; ++i) {
    w[i] = std::exp(-beta * (sdfs[i] - m));
    z += w[i];
  }
  sdf = m - std::log(z) / beta;
  for (int i = 0; i < n_blobs_; ++i) {
    const Vec3 rgb(logistic(theta[7 * i + 4]), logistic(theta[7 * i + 5]),
                   logistic(theta[7 * i + 6]));
    color += (w[i] / z) * rgb;
  }
}

void BlobFieldDecoder::decode_grad(const VecX& theta, const Vec3& x,
                                   DecodeGrads& out) const {
  check_latent(theta);
  const int d = latent_dim();
  out.dsdf_dtheta.resize(d);
  out.dsdf_dtheta.setZero();
  out.dcolor_dtheta.resize(3, d);
  out.dcolor_dtheta.setZero();
  out.dsdf_dx.setZero();
  out.dcolor_dx.setZero();

  const double beta = beta_smooth_;
  Eigen::ArrayXd sdfs(n_blobs_);
  std::vector<Vec3> units(n_blobs_);
  std::vector<Vec3> rgbs(n_blobs_);
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_blobs_; ++i) {
    const Vec3 c = theta.segment<3>(7 * i);
    const Vec3 diff = x - c;
    const double dist = diff.norm();
    units[i] = dist > 1e-12 ? Vec3(diff / dist) : Vec3::Zero();
    sdfs[i] = dist - softplus(theta[7 * i + 3]);
    rgbs[i] = Vec3(logistic(theta[7 * i + 4]), logistic(theta[7 * i + 5]),
                   logistic(theta[7 * i + 6]));
    m = std::min(m, sdfs[i]);
  }
  Eigen::ArrayXd w(n_blobs_);
  double z = 0.0;
  for (int i = 0; i < n_blobs_; ++i) {
    w[i] = std::exp(-beta * (sdfs[i] - m));
    z += w[i];
  }
  w /= z;
  Vec3 color = Vec3::Zero();
  for (int i = 0; i < n_blobs_; ++i) color += w[i] * rgbs[i];

  for (int i = 0; i < n_blobs_; ++i) {
    // d sdf_i / d [center, radius logit] and / d x
    const Vec3 ds_dc = -units[i];
    const double ds_dr = -logistic(theta[7 * i + 3]);  // softplus'
    // smooth-min weight: d sdf / d sdf_i = w_i
    out.dsdf_dtheta.segment<3>(7 * i) = w[i] * ds_dc;
    out.dsdf_dtheta[7 * i + 3] = w[i] * ds_dr;
    out.dsdf_dx += w[i] * units[i];

    // color responds to sdf_i through the weights: -beta w_i (rgb_i - color)
    const Vec3 dcol_dsdfi = -beta * w[i] * (rgbs[i] - color);
    out.dcolor_dtheta.block<3, 3>(0, 7 * i) = dcol_dsdfi * ds_dc.transpose();
    out.dcolor_dtheta.col(7 * i + 3) = dcol_dsdfi * ds_dr;
    out.dcolor_dx += dcol_dsdfi * units[i].transpose();

    for (int k = 0; k < 3; ++k) {
      const double p = rgbs[i][k];
      out.dcolor_dtheta(k, 7 * i + 4 + k) = w[i] * p * (1.0 - p);
    }
  }
}

VecX BlobFieldDecoder::encode(const std::vector<Vec3>& centers,
                              const std::vector<double>& radii,
                              const std::vector<Vec3>& colors) const {
  if (static_cast<int>(centers.size()) != n_blobs_ ||
      static_cast<int>(radii.size()) != n_blobs_ ||
      static_cast<int>(colors.size()) != n_blobs_) {
    throw LatentSizeMismatch("encode: expected " + std::to_string(n_blobs_) +
                             " blobs");
  }
  VecX theta(latent_dim());
  for (int i = 0; i < n_blobs_; ++i) {
    theta.segment<3>(7 * i) = centers[i];
    theta[7 * i + 3] = softplus_inverse(radii[i]);
    for (int k = 0; k < 3; ++k) {
      theta[7 * i + 4 + k] = logit(std::clamp(colors[i][k], 1e-4, 1.0 - 1e-4));
    }
  }
  return theta;
}

// ---------------------------------------------------------------------------
// GridFieldDecoder

GridFieldDecoder::GridFieldDecoder(int resolution, const Eigen::AlignedBox3d& box)
    : res_(resolution), box_(box) {
  if (res_ < 4) {
    throw LatentSizeMismatch("GridFieldDecoder: resolution must be >= 4");
  }
}

namespace {

struct TrilinearCtx {
  int base[3];
  double frac[3];
  double cell[3];
  Vec3 clamped;
  double outside_dist;
  Vec3 outside_dir;
};

TrilinearCtx trilinear_setup(const Eigen::AlignedBox3d& box, int res,
                             const Vec3& x) {
  TrilinearCtx c;
  c.clamped = x.cwiseMax(box.min()).cwiseMin(box.max());
  const Vec3 out = x - c.clamped;
  c.outside_dist = out.norm();
  c.outside_dir = c.outside_dist > 1e-12 ? Vec3(out / c.outside_dist) : Vec3::Zero();
  for (int a = 0; a < 3; ++a) {
    c.cell[a] = (box.max()[a] - box.min()[a]) / (res - 1);
    double g = (c.clamped[a] - box.min()[a]) / c.cell[a];
    int b = static_cast<int>(std::floor(g));
    b = std::clamp(b, 0, res - 2);
    c.base[a] = b;
    c.frac[a] = g - b;
  }
  return c;
}

}  // namespace

void GridFieldDecoder::decode(const VecX& theta, const Vec3& x, double& sdf,
                              Vec3& color) const {
  check_latent(theta);
  const TrilinearCtx c = trilinear_setup(box_, res_, x);
  double acc[4] = {0, 0, 0, 0};
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const double wgt = (dx ? c.frac[0] : 1 - c.frac[0]) *
                           (dy ? c.frac[1] : 1 - c.frac[1]) *
                           (dz ? c.frac[2] : 1 - c.frac[2]);
        const int idx =
            (((c.base[0] + dx) * res_ + c.base[1] + dy) * res_ + c.base[2] + dz) *
            4;
        for (int ch = 0; ch < 4; ++ch) acc[ch] += wgt * theta[idx + ch];
      }
  sdf = acc[0] + c.outside_dist;
  color = Vec3(logistic(acc[1]), logistic(acc[2]), logistic(acc[3]));
}

void GridFieldDecoder::decode_grad(const VecX& theta, const Vec3& x,
                                   DecodeGrads& out) const {
  check_latent(theta);
  const int d = latent_dim();
  out.dsdf_dtheta.resize(d);
  out.dsdf_dtheta.setZero();
  out.dcolor_dtheta.resize(3, d);
  out.dcolor_dtheta.setZero();
  out.dsdf_dx.setZero();
  out.dcolor_dx.setZero();

  const TrilinearCtx c = trilinear_setup(box_, res_, x);
  const bool interior =
      c.outside_dist == 0.0 && c.frac[0] > 0 && c.frac[0] < 1 && c.frac[1] > 0 &&
      c.frac[1] < 1 && c.frac[2] > 0 && c.frac[2] < 1;
  double acc[4] = {0, 0, 0, 0};
  Vec3 spatial[4] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  for (int dx = 0; dx < 2; ++dx)
    for (int dy = 0; dy < 2; ++dy)
      for (int dz = 0; dz < 2; ++dz) {
        const double wx = dx ? c.frac[0] : 1 - c.frac[0];
        const double wy = dy ? c.frac[1] : 1 - c.frac[1];
        const double wz = dz ? c.frac[2] : 1 - c.frac[2];
        const double wgt = wx * wy * wz;
        const Vec3 dw((dx ? 1.0 : -1.0) * wy * wz / c.cell[0],
                      wx * (dy ? 1.0 : -1.0) * wz / c.cell[1],
                      wx * wy * (dz ? 1.0 : -1.0) / c.cell[2]);
        const int idx =
            (((c.base[0] + dx) * res_ + c.base[1] + dy) * res_ + c.base[2] + dz) *
            4;
        for (int ch = 0; ch < 4; ++ch) {
          acc[ch] += wgt * theta[idx + ch];
          if (interior) spatial[ch] += dw * theta[idx + ch];
        }
        out.dsdf_dtheta[idx] = wgt;
      }
  out.dsdf_dx = spatial[0] + c.outside_dir;
  for (int ch = 0; ch < 3; ++ch) {
    const double p = logistic(acc[ch + 1]);
    const double dp = p * (1.0 - p);
    for (int dx = 0; dx < 2; ++dx)
      for (int dy = 0; dy < 2; ++dy)
        for (int dz = 0; dz < 2; ++dz) {
          const double wgt = (dx ? c.frac[0] : 1 - c.frac[0]) *
                             (dy ? c.frac[1] : 1 - c.frac[1]) *
                             (dz ? c.frac[2] : 1 - c.frac[2]);
          const int idx = (((c.base[0] + dx) * res_ + c.base[1] + dy) * res_ +
                           c.base[2] + dz) *
                          4;
          out.dcolor_dtheta(ch, idx + ch + 1) = dp * wgt;
        }
    out.dcolor_dx.row(ch) = dp * spatial[ch + 1].transpose();
  }
}

// ---------------------------------------------------------------------------
// Marching cubes

TriangleMesh extract_mesh(const ShapeDecoder& dec, const VecX& theta,
                          int resolution, const Eigen::AlignedBox3d& bounds) {
  if (resolution < 8) {
    throw EmptyField("extract_mesh: resolution must be >= 8");
  }
  const int n = resolution + 1;  // grid points per axis
  const Vec3 cell = (bounds.max() - bounds.min()) / resolution;

  std::vector<double> field(static_cast<size_t>(n) * n * n);
  std::vector<Vec3> fieldcol(static_cast<size_t>(n) * n * n);
  bool any_neg = false, any_pos = false;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec3 p = bounds.min() + Vec3(i * cell.x(), j * cell.y(), k * cell.z());
        double sdf;
        Vec3 col;
        dec.decode(theta, p, sdf, col);
        field[(static_cast<size_t>(i) * n + j) * n + k] = sdf;
        fieldcol[(static_cast<size_t>(i) * n + j) * n + k] = col;
        any_neg |= sdf < 0.0;
        any_pos |= sdf >= 0.0;
      }
  if (!any_neg || !any_pos) {
    throw EmptyField("extract_mesh: no sign change inside bounds");
  }

  // cube-edge id -> (corner offset, axis) for vertex welding
  static const int kEdgeAnchor[12][4] = {
      {0, 0, 0, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 1},
      {0, 0, 1, 0}, {1, 0, 1, 1}, {0, 1, 1, 0}, {0, 0, 1, 1},
      {0, 0, 0, 2}, {1, 0, 0, 2}, {1, 1, 0, 2}, {0, 1, 0, 2}};
  static const int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

  TriangleMesh mesh;
  std::unordered_map<uint64_t, int> edge_vertex;
  const auto value = [&](int i, int j, int k) {
    return field[(static_cast<size_t>(i) * n + j) * n + k];
  };

  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      for (int k = 0; k < resolution; ++k) {
        int cfg = 0;
        for (int v = 0; v < 8; ++v) {
          if (value(i + kCorner[v][0], j + kCorner[v][1], k + kCorner[v][2]) < 0.0)
            cfg |= 1 << v;
        }
        const int8_t* row = detail::kMcTriTable[cfg];
        if (row[0] < 0) continue;
        int ids[12];
        for (int e = 0; e < 12; ++e) {
          if (!(detail::kMcEdgeTable[cfg] & (1 << e))) continue;
          const int ai = i + kEdgeAnchor[e][0];
          const int aj = j + kEdgeAnchor[e][1];
          const int ak = k + kEdgeAnchor[e][2];
          const int axis = kEdgeAnchor[e][3];
          const uint64_t key =
              ((static_cast<uint64_t>(ai) * n + aj) * n + ak) * 3 + axis;
          auto it = edge_vertex.find(key);
          if (it == edge_vertex.end()) {
            int bi = ai, bj = aj, bk = ak;
            (axis == 0 ? bi : axis == 1 ? bj : bk) += 1;
            const double fa = value(ai, aj, ak);
            const double fb = value(bi, bj, bk);
            const double t = fa / (fa - fb);
            const Vec3 pa =
                bounds.min() + Vec3(ai * cell.x(), aj * cell.y(), ak * cell.z());
            const Vec3 pb =
                bounds.min() + Vec3(bi * cell.x(), bj * cell.y(), bk * cell.z());
            const Vec3 ca = fieldcol[(static_cast<size_t>(ai) * n + aj) * n + ak];
            const Vec3 cb = fieldcol[(static_cast<size_t>(bi) * n + bj) * n + bk];
            it = edge_vertex.emplace(key, static_cast<int>(mesh.vertices.size()))
                     .first;
            mesh.vertices.push_back(pa + t * (pb - pa));
            mesh.colors.push_back(ca + t * (cb - ca));
          }
          ids[e] = it->second;
        }
        for (int m = 0; row[m] >= 0; m += 3) {
          mesh.triangles.push_back({ids[row[m]], ids[row[m + 1]], ids[row[m + 2]]});
        }
      }
  return mesh;
}

// ---------------------------------------------------------------------------
// Surface sampling

MatX sample_surface_points(const ShapeDecoder& dec, const VecX& theta, int n,
                           std::mt19937_64& rng, int mesh_resolution) {
  MatX pts(n, 3);
  if (n == 0) return pts;
  const TriangleMesh mesh =
      extract_mesh(dec, theta, mesh_resolution, dec.bounds());

  std::vector<double> cumulative(mesh.triangles.size());
  double total = 0.0;
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    const Vec3 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]],
               c = mesh.vertices[t[2]];
    total += 0.5 * (b - a).cross(c - a).norm();
    cumulative[i] = total;
  }
  if (total <= 0.0) throw EmptyField("sample_surface_points: empty surface");

  std::uniform_real_distribution<double> uni(0.0, 1.0);
  DecodeGrads g;
  int produced = 0;
  int attempts = 0;
  const int max_attempts = 50 * n + 100;
  while (produced < n && attempts++ < max_attempts) {
    const double pick = uni(rng) * total;
    const size_t ti =
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) -
        cumulative.begin();
    const auto& t = mesh.triangles[std::min(ti, mesh.triangles.size() - 1)];
    double u = uni(rng), v = uni(rng);
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    Vec3 p = mesh.vertices[t[0]] + u * (mesh.vertices[t[1]] - mesh.vertices[t[0]]) +
             v * (mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    // project onto the zero set
    bool ok = false;
    for (int it = 0; it < 12; ++it) {
      double sdf;
      Vec3 col;
      dec.decode(theta, p, sdf, col);
      if (std::abs(sdf) < 1e-4) {
        ok = true;
        break;
      }
      dec.decode_grad(theta, p, g);
      const double n2 = g.dsdf_dx.squaredNorm();
      if (n2 < 1e-12) break;
      p -= (sdf / n2) * g.dsdf_dx;
    }
    if (!ok) {
      double sdf;
      Vec3 col;
      dec.decode(theta, p, sdf, col);
      ok = std::abs(sdf) < 1e-3;
    }
    if (ok) {
      pts.row(produced++) = p.transpose();
    }
  }
  if (produced < n) {
    throw EmptyField("sample_surface_points: projection kept failing");
  }
  return pts;
}

std::vector<VecX> interpolate_latents(const VecX& theta_a, const VecX& theta_b,
                                      int steps) {
  if (theta_a.size() != theta_b.size()) {
    throw LatentSizeMismatch("interpolate_latents: size mismatch");
  }
  if (steps < 2) {
    throw LatentSizeMismatch("interpolate_latents: steps must be >= 2");
  }
  std::vector<VecX> out;
  out.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    const double a = static_cast<double>(i) / (steps - 1);
    out.push_back((1.0 - a) * theta_a + a * theta_b);
  }
  return out;
}

}  // namespace gom
