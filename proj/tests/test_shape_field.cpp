#include <doctest.h>

#include <random>
#include <set>

#include "gom/errors.hpp"
#include "gom/rng.hpp"
#include "gom/shape_field.hpp"

using namespace gom;

namespace {

VecX unit_sphere_latent(const BlobFieldDecoder& dec) {
  // one real sphere, the rest parked far away and tiny
  std::vector<Vec3> centers{{0, 0, 0}};
  std::vector<double> radii{1.0};
  std::vector<Vec3> colors{{0.8, 0.2, 0.2}};
  for (int i = 1; i < dec.n_blobs(); ++i) {
    centers.push_back(Vec3(40.0 + 10.0 * i, 0, 0));
    radii.push_back(0.05);
    colors.push_back(Vec3(0.5, 0.5, 0.5));
  }
  return dec.encode(centers, radii, colors);
}

VecX random_latent(const BlobFieldDecoder& dec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<Vec3> centers, colors;
  std::vector<double> radii;
  for (int i = 0; i < dec.n_blobs(); ++i) {
    centers.push_back(0.6 * Vec3(uni(rng), uni(rng), uni(rng)));
    radii.push_back(0.25 + 0.3 * std::abs(uni(rng)));
    colors.push_back(Vec3(0.2, 0.2, 0.2) +
                     0.6 * Vec3(std::abs(uni(rng)), std::abs(uni(rng)),
                                std::abs(uni(rng))));
  }
  return dec.encode(centers, radii, colors);
}

}  // namespace

TEST_SUITE("shape_field") {

TEST_CASE("density_from_sdf") {
  CHECK(density_from_sdf(0.0, 10.0) == doctest::Approx(5.0));
  CHECK(density_from_sdf(100.0, 10.0) == doctest::Approx(0.0));
  // logistic(5) evaluated directly
  CHECK(density_from_sdf(-0.5, 10.0) ==
        doctest::Approx(10.0 / (1.0 + std::exp(-5.0))).epsilon(1e-12));
  // monotone decreasing (away from the saturated tails)
  double prev = density_from_sdf(-1.5, 10.0);
  for (double sdf = -1.4; sdf < 1.5; sdf += 0.1) {
    const double cur = density_from_sdf(sdf, 10.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("blob decode basics") {
  const BlobFieldDecoder dec(1);
  const VecX theta = dec.encode({{0, 0, 0}}, {1.0}, {{0.5, 0.5, 0.5}});
  double sdf;
  Vec3 color;
  dec.decode(theta, Vec3::Zero(), sdf, color);
  CHECK(sdf == doctest::Approx(-1.0).epsilon(1e-12));
  dec.decode(theta, Vec3(2, 0, 0), sdf, color);
  CHECK(sdf == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(dec.decode(VecX::Zero(3), Vec3::Zero(), sdf, color),
                  LatentSizeMismatch);
}

TEST_CASE("blob smooth-min stays within log(K)/beta of the hard min") {
  const BlobFieldDecoder dec(4, 8.0);
  std::mt19937_64 rng = make_rng(21);
  std::uniform_real_distribution<double> uni(-1.5, 1.5);
  const VecX theta = random_latent(dec, rng);
  const double slack = std::log(4.0) / dec.beta_smooth();
  for (int i = 0; i < 500; ++i) {
    const Vec3 x(uni(rng), uni(rng), uni(rng));
    double sdf;
    Vec3 color;
    dec.decode(theta, x, sdf, color);
    double hard = std::numeric_limits<double>::infinity();
    for (int b = 0; b < 4; ++b) {
      const Vec3 c = theta.segment<3>(7 * b);
      const double r = std::log1p(std::exp(theta[7 * b + 3]));
      hard = std::min(hard, (x - c).norm() - r);
    }
    CHECK(sdf <= hard + 1e-12);
    CHECK(sdf >= hard - slack - 1e-12);
    CHECK(color.minCoeff() >= 0.0);
    CHECK(color.maxCoeff() <= 1.0);
  }
}

TEST_CASE("grid decode of a constant field") {
  const Eigen::AlignedBox3d box(Vec3(-1, -1, -1), Vec3(1, 1, 1));
  const GridFieldDecoder dec(5, box);
  VecX theta = VecX::Zero(dec.latent_dim());
  for (int i = 0; i < dec.latent_dim(); i += 4) theta[i] = 0.37;
  double sdf;
  Vec3 color;
  std::mt19937_64 rng = make_rng(22);
  std::uniform_real_distribution<double> uni(-0.99, 0.99);
  for (int i = 0; i < 50; ++i) {
    dec.decode(theta, Vec3(uni(rng), uni(rng), uni(rng)), sdf, color);
    CHECK(sdf == doctest::Approx(0.37).epsilon(1e-12));
  }
  // outside the box the sdf grows with the clamp distance
  dec.decode(theta, Vec3(2.0, 0, 0), sdf, color);
  CHECK(sdf == doctest::Approx(1.37).epsilon(1e-9));

  CHECK_THROWS_AS(GridFieldDecoder(3, box), LatentSizeMismatch);
}

TEST_CASE("blob decode_grad matches finite differences") {
  const BlobFieldDecoder dec(4);
  std::mt19937_64 rng = make_rng(23);
  std::uniform_real_distribution<double> uni(-1.2, 1.2);
  const double h = 1e-6;
  int checked = 0, passed = 0;
  for (int trial = 0; trial < 25; ++trial) {
    VecX theta = random_latent(dec, rng);
    const Vec3 x(uni(rng), uni(rng), uni(rng));
    DecodeGrads g;
    dec.decode_grad(theta, x, g);
    double s0;
    Vec3 c0;
    dec.decode(theta, x, s0, c0);

    for (int k = 0; k < dec.latent_dim(); ++k) {
      VecX hi = theta, lo = theta;
      hi[k] += h;
      lo[k] -= h;
      double sh, sl;
      Vec3 ch, cl;
      dec.decode(hi, x, sh, ch);
      dec.decode(lo, x, sl, cl);
      const double fd_sdf = (sh - sl) / (2 * h);
      checked++;
      if (std::abs(g.dsdf_dtheta[k] - fd_sdf) /
              std::max(std::abs(fd_sdf), 1e-4) <
          1e-4)
        passed++;
      const Vec3 fd_col = (ch - cl) / (2 * h);
      for (int r = 0; r < 3; ++r) {
        checked++;
        if (std::abs(g.dcolor_dtheta(r, k) - fd_col[r]) /
                std::max(std::abs(fd_col[r]), 1e-4) <
            1e-4)
          passed++;
      }
    }
    for (int a = 0; a < 3; ++a) {
      Vec3 xh = x, xl = x;
      xh[a] += h;
      xl[a] -= h;
      double sh, sl;
      Vec3 ch, cl;
      dec.decode(theta, xh, sh, ch);
      dec.decode(theta, xl, sl, cl);
      checked++;
      if (std::abs(g.dsdf_dx[a] - (sh - sl) / (2 * h)) < 1e-4) passed++;
      const Vec3 fd_col = (ch - cl) / (2 * h);
      for (int r = 0; r < 3; ++r) {
        checked++;
        if (std::abs(g.dcolor_dx(r, a) - fd_col[r]) /
                std::max(std::abs(fd_col[r]), 1e-4) <
            1e-4)
          passed++;
      }
    }
  }
  // allow the rare smooth-min tie or near-center probe to miss
  CHECK(passed >= 0.95 * checked);
}

TEST_CASE("single blob radius derivative at a surface point") {
  const BlobFieldDecoder dec(1);
  const VecX theta = dec.encode({{0, 0, 0}}, {1.0}, {{0.5, 0.5, 0.5}});
  DecodeGrads g;
  dec.decode_grad(theta, Vec3(1, 0, 0), g);
  // d sdf / d radius_logit = -softplus'(logit) = -logistic(logit)
  const double expected = -1.0 / (1.0 + std::exp(-theta[3]));
  CHECK(g.dsdf_dtheta[3] == doctest::Approx(expected).epsilon(1e-10));
  // unit radial spatial gradient at (2,0,0)
  dec.decode_grad(theta, Vec3(2, 0, 0), g);
  CHECK((g.dsdf_dx - Vec3(1, 0, 0)).norm() < 1e-12);
}

TEST_CASE("grid gradient support is the 8 enclosing voxels") {
  const Eigen::AlignedBox3d box(Vec3(-1, -1, -1), Vec3(1, 1, 1));
  const GridFieldDecoder dec(4, box);
  std::mt19937_64 rng = make_rng(24);
  std::normal_distribution<double> normal(0.0, 0.3);
  VecX theta(dec.latent_dim());
  for (int i = 0; i < theta.size(); ++i) theta[i] = normal(rng);
  DecodeGrads g;
  dec.decode_grad(theta, Vec3(0.21, -0.37, 0.11), g);
  int nonzero = 0;
  for (int i = 0; i < theta.size(); i += 4) {
    if (g.dsdf_dtheta[i] != 0.0) nonzero++;
  }
  CHECK(nonzero == 8);
}

TEST_CASE("grid decode_grad matches finite differences") {
  const Eigen::AlignedBox3d box(Vec3(-1, -1, -1), Vec3(1, 1, 1));
  const GridFieldDecoder dec(4, box);
  std::mt19937_64 rng = make_rng(25);
  std::normal_distribution<double> normal(0.0, 0.4);
  VecX theta(dec.latent_dim());
  for (int i = 0; i < theta.size(); ++i) theta[i] = normal(rng);
  const Vec3 x(0.13, 0.52, -0.61);
  DecodeGrads g;
  dec.decode_grad(theta, x, g);
  const double h = 1e-6;
  for (int k = 0; k < theta.size(); ++k) {
    VecX hi = theta, lo = theta;
    hi[k] += h;
    lo[k] -= h;
    double sh, sl;
    Vec3 ch, cl;
    dec.decode(hi, x, sh, ch);
    dec.decode(lo, x, sl, cl);
    CHECK(g.dsdf_dtheta[k] == doctest::Approx((sh - sl) / (2 * h)).epsilon(1e-5));
    const Vec3 fd_col = (ch - cl) / (2 * h);
    for (int r = 0; r < 3; ++r) {
      CHECK(g.dcolor_dtheta(r, k) ==
            doctest::Approx(fd_col[r]).epsilon(1e-4).scale(1.0));
    }
  }
  for (int a = 0; a < 3; ++a) {
    Vec3 xh = x, xl = x;
    xh[a] += h;
    xl[a] -= h;
    double sh, sl;
    Vec3 ch, cl;
    dec.decode(theta, xh, sh, ch);
    dec.decode(theta, xl, sl, cl);
    CHECK(g.dsdf_dx[a] == doctest::Approx((sh - sl) / (2 * h)).epsilon(1e-5));
  }
}

TEST_CASE("extract_mesh on a unit sphere") {
  const BlobFieldDecoder dec(1);
  const VecX theta = dec.encode({{0, 0, 0}}, {1.0}, {{0.9, 0.1, 0.1}});
  const Eigen::AlignedBox3d box(Vec3(-1.5, -1.5, -1.5), Vec3(1.5, 1.5, 1.5));
  const TriangleMesh mesh = extract_mesh(dec, theta, 64, box);
  REQUIRE(!mesh.vertices.empty());
  const double h = 3.0 / 64.0;
  double area = 0.0;
  for (const auto& t : mesh.triangles) {
    const Vec3 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]],
               c = mesh.vertices[t[2]];
    area += 0.5 * (b - a).cross(c - a).norm();
  }
  CHECK(area == doctest::Approx(4.0 * kPi).epsilon(0.05));
  for (const Vec3& v : mesh.vertices) {
    CHECK(v.norm() > 1.0 - 2.0 * h);
    CHECK(v.norm() < 1.0 + 2.0 * h);
  }

  // every vertex sits on the field within 2 cells
  for (const Vec3& v : mesh.vertices) {
    double sdf;
    Vec3 color;
    dec.decode(theta, v, sdf, color);
    CHECK(std::abs(sdf) < 2.0 * h);
  }

  // watertight: every directed edge appears once, with its opposite present
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto key = std::make_pair(t[e], t[(e + 1) % 3]);
      CHECK(edges.insert(key).second);
    }
  }
  for (const auto& [a, b] : edges) {
    CHECK(edges.count({b, a}) == 1);
  }
}

TEST_CASE("extract_mesh rejects empty fields") {
  const BlobFieldDecoder dec(1);
  const VecX theta = dec.encode({{0, 0, 0}}, {0.3}, {{0.5, 0.5, 0.5}});
  const Eigen::AlignedBox3d far_box(Vec3(5, 5, 5), Vec3(8, 8, 8));
  CHECK_THROWS_AS(extract_mesh(dec, theta, 16, far_box), EmptyField);
}

TEST_CASE("sample_surface_points lie on the unit sphere") {
  const BlobFieldDecoder dec(1);
  const VecX theta = dec.encode({{0, 0, 0}}, {1.0}, {{0.5, 0.5, 0.5}});
  std::mt19937_64 rng = make_rng(26);
  const MatX pts = sample_surface_points(dec, theta, 256, rng);
  REQUIRE(pts.rows() == 256);
  for (int i = 0; i < pts.rows(); ++i) {
    CHECK(std::abs(pts.row(i).norm() - 1.0) < 1e-3);
  }

  std::mt19937_64 rng2 = make_rng(26);
  const MatX pts2 = sample_surface_points(dec, theta, 256, rng2);
  CHECK((pts - pts2).norm() == 0.0);  // deterministic under the seed

  std::mt19937_64 rng3 = make_rng(26);
  CHECK(sample_surface_points(dec, theta, 0, rng3).rows() == 0);
}

TEST_CASE("interpolate_latents") {
  VecX a(3), b(3);
  a << 1, 2, 3;
  b << 3, 2, 1;
  const auto two = interpolate_latents(a, b, 2);
  REQUIRE(two.size() == 2);
  CHECK((two[0] - a).norm() == 0.0);
  CHECK((two[1] - b).norm() == 0.0);

  const auto three = interpolate_latents(a, b, 3);
  CHECK((three[1] - 0.5 * (a + b)).norm() < 1e-15);

  const auto path = interpolate_latents(a, b, 6);
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    CHECK((path[i + 1] - path[i]).norm() ==
          doctest::Approx((b - a).norm() / 5).epsilon(1e-12));
  }
  VecX c(4);
  CHECK_THROWS_AS(interpolate_latents(a, c, 3), LatentSizeMismatch);
}

}  // TEST_SUITE
