#pragma once

#include <array>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "gom/common.hpp"

namespace gom {

// One field probe: signed distance (negative inside), RGB in [0,1], and the
// volume density implied by the sdf at the sharpness used to decode it.
struct FieldSample {
  double sdf = 0.0;
  Vec3 color = Vec3::Zero();
  double density = 0.0;
};

// Derivatives of one probe with respect to the latent and the probe point.
// Buffers are resized on demand so a caller can reuse one instance.
struct DecodeGrads {
  VecX dsdf_dtheta;                // D
  Eigen::Matrix3Xd dcolor_dtheta;  // 3 x D
  Vec3 dsdf_dx = Vec3::Zero();
  Mat3 dcolor_dx = Mat3::Zero();   // d color_i / d x_j
};

// sigma(x) = kappa * logistic(-kappa * sdf); kappa/2 at the surface.
double density_from_sdf(double sdf, double kappa);
double density_sdf_derivative(double sdf, double kappa);

class ShapeDecoder {
 public:
  virtual ~ShapeDecoder() = default;

  virtual int latent_dim() const = 0;
  virtual std::string name() const = 0;
  // Canonical-frame region the field is expected to live in; used as the
  // default meshing/sampling volume.
  virtual Eigen::AlignedBox3d bounds() const = 0;

  // Throws LatentSizeMismatch when theta.size() != latent_dim().
  virtual void decode(const VecX& theta, const Vec3& x, double& sdf,
                      Vec3& color) const = 0;
  virtual void decode_grad(const VecX& theta, const Vec3& x,
                           DecodeGrads& out) const = 0;

 protected:
  void check_latent(const VecX& theta) const;
};

FieldSample decode(const ShapeDecoder& dec, const VecX& theta, const Vec3& x,
                   double kappa);

// Smooth-min union of colored spheres. Latent layout per blob:
// [center xyz, radius logit, rgb logits]; radius through softplus, colors
// through a logistic squash.
class BlobFieldDecoder : public ShapeDecoder {
 public:
  explicit BlobFieldDecoder(int n_blobs = 4, double beta_smooth = 8.0);

  int latent_dim() const override { return 7 * n_blobs_; }
  std::string name() const override { return "blob"; }
  Eigen::AlignedBox3d bounds() const override;
  void decode(const VecX& theta, const Vec3& x, double& sdf,
              Vec3& color) const override;
  void decode_grad(const VecX& theta, const Vec3& x,
                   DecodeGrads& out) const override;

  int n_blobs() const { return n_blobs_; }
  double beta_smooth() const { return beta_smooth_; }

  // Build the raw latent that decodes to the given spheres (inverts the
  // softplus/logistic squashes). Handy for tests and prior construction.
  VecX encode(const std::vector<Vec3>& centers, const std::vector<double>& radii,
              const std::vector<Vec3>& colors) const;

 private:
  int n_blobs_;
  double beta_smooth_;
};

// Voxel lattice of (sdf, rgb logits) with trilinear interpolation. Outside
// the lattice the sdf grows with the distance to the box so rays see a
// positive field. Latent layout: ((ix*R + iy)*R + iz)*4 + channel.
class GridFieldDecoder : public ShapeDecoder {
 public:
  GridFieldDecoder(int resolution, const Eigen::AlignedBox3d& box);

  int latent_dim() const override { return 4 * res_ * res_ * res_; }
  std::string name() const override { return "grid"; }
  Eigen::AlignedBox3d bounds() const override { return box_; }
  void decode(const VecX& theta, const Vec3& x, double& sdf,
              Vec3& color) const override;
  void decode_grad(const VecX& theta, const Vec3& x,
                   DecodeGrads& out) const override;

  int resolution() const { return res_; }

 private:
  int res_;
  Eigen::AlignedBox3d box_;
};

struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Vec3> colors;  // per vertex, [0,1]
};

// Marching cubes over `resolution` cells per axis. Throws EmptyField when
// the field has no sign change inside the bounds.
TriangleMesh extract_mesh(const ShapeDecoder& dec, const VecX& theta,
                          int resolution, const Eigen::AlignedBox3d& bounds);

// Area-uniform mesh samples projected back onto the zero set; every
// returned point has |sdf| < 1e-3.
MatX sample_surface_points(const ShapeDecoder& dec, const VecX& theta, int n,
                           std::mt19937_64& rng, int mesh_resolution = 48);

// Affine path from theta_a to theta_b inclusive; steps >= 2.
std::vector<VecX> interpolate_latents(const VecX& theta_a, const VecX& theta_b,
                                      int steps);

}  // namespace gom
