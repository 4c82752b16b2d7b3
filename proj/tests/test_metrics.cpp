#include <doctest.h>

#include <random>

#include "gom/errors.hpp"
#include "gom/metrics.hpp"
#include "gom/rng.hpp"

using namespace gom;

namespace {

VecX sphere_latent(const BlobFieldDecoder& dec) {
  std::vector<Vec3> centers{{0, 0, 0}};
  std::vector<double> radii{1.0};
  std::vector<Vec3> colors{{0.5, 0.5, 0.5}};
  for (int i = 1; i < dec.n_blobs(); ++i) {
    centers.push_back(Vec3(50.0 + 10.0 * i, 0, 0));
    radii.push_back(0.05);
    colors.push_back(Vec3(0.5, 0.5, 0.5));
  }
  return dec.encode(centers, radii, colors);
}

// plain-loop nearest-neighbor mean, written independently of the library
double chamfer_oracle(const PointCloud& a, const PointCloud& b) {
  double sum_ab = 0.0;
  for (size_t i = 0; i < a.points.size(); ++i) {
    double best = 1e300;
    for (size_t j = 0; j < b.points.size(); ++j) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double d = a.points[i][k] - b.points[j][k];
        d2 += d * d;
      }
      if (d2 < best) best = d2;
    }
    sum_ab += std::sqrt(best);
  }
  double sum_ba = 0.0;
  for (size_t j = 0; j < b.points.size(); ++j) {
    double best = 1e300;
    for (size_t i = 0; i < a.points.size(); ++i) {
      double d2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double d = a.points[i][k] - b.points[j][k];
        d2 += d * d;
      }
      if (d2 < best) best = d2;
    }
    sum_ba += std::sqrt(best);
  }
  return 0.5 * (sum_ab / a.points.size() + sum_ba / b.points.size());
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("world_bbox of the unit sphere") {
  const BlobFieldDecoder dec(4);
  const VecX theta = sphere_latent(dec);
  const Aabb box = world_bbox(dec, theta, PoseVec9::identity(), 4096, 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(box.min[k] == doctest::Approx(-1.0).epsilon(0.03));
    CHECK(box.max[k] == doctest::Approx(1.0).epsilon(0.03));
  }

  PoseVec9 moved;
  moved.t = Vec3(0.5, -2.0, 1.0);
  const Aabb shifted = world_bbox(dec, theta, moved, 4096, 3);
  CHECK((shifted.min - (box.min + moved.t)).norm() < 1e-9);
  CHECK((shifted.max - (box.max + moved.t)).norm() < 1e-9);

  PoseVec9 stretched;
  stretched.s = Vec3(2.0, 1.0, 1.0);
  const Aabb wide = world_bbox(dec, theta, stretched, 4096, 3);
  CHECK(wide.max[0] - wide.min[0] ==
        doctest::Approx(2.0 * (box.max[0] - box.min[0])).epsilon(0.02));
}

TEST_CASE("iou_bbox arithmetic") {
  Aabb unit{Vec3(0, 0, 0), Vec3(1, 1, 1)};
  CHECK(iou_bbox(unit, unit) == doctest::Approx(1.0));

  Aabb far_box{Vec3(5, 5, 5), Vec3(6, 6, 6)};
  CHECK(iou_bbox(unit, far_box) == 0.0);

  Aabb shifted{Vec3(0.5, 0, 0), Vec3(1.5, 1, 1)};
  CHECK(iou_bbox(unit, shifted) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(iou_bbox(shifted, unit) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("chamfer basics and brute-force agreement") {
  PointCloud a, b;
  a.points = {Vec3(0, 0, 0)};
  b.points = {Vec3(1, 0, 0)};
  CHECK(chamfer(a, a) == 0.0);
  CHECK(chamfer(a, b) == doctest::Approx(1.0));

  std::mt19937_64 rng = make_rng(81);
  std::normal_distribution<double> normal(0.0, 1.0);
  PointCloud x, y;
  for (int i = 0; i < 70; ++i) {
    x.points.emplace_back(normal(rng), normal(rng), normal(rng));
  }
  for (int i = 0; i < 55; ++i) {
    y.points.emplace_back(normal(rng), normal(rng), normal(rng));
  }
  CHECK(chamfer(x, y) == chamfer_oracle(x, y));
  CHECK(chamfer(x, y) == chamfer(y, x));
  CHECK(chamfer(x, y) > 0.0);

  PointCloud empty;
  CHECK_THROWS_AS(chamfer(empty, x), EmptyCloud);
}

TEST_CASE("self evaluation is near perfect") {
  const BlobFieldDecoder dec(4);
  const VecX theta = sphere_latent(dec);
  PoseVec9 xi;
  xi.t = Vec3(0.3, 0.1, -0.2);
  xi.s = Vec3(1.2, 0.9, 1.05);
  const EvalResult self = eval_estimate(dec, theta, xi, theta, xi, 4096, 11);
  CHECK(self.iou >= 0.98);
  // sampling floor: roughly half the mean spacing of 4096 surface points
  const double spacing = std::sqrt(4.0 * kPi / 4096.0);
  CHECK(self.cd < 2.0 * spacing);
}

TEST_CASE("metrics degrade monotonically with translation") {
  const BlobFieldDecoder dec(4);
  const VecX theta = sphere_latent(dec);
  const PoseVec9 gt = PoseVec9::identity();
  double prev_cd = -1.0;
  double prev_iou = 2.0;
  for (const double dx : {0.0, 0.3, 0.8, 1.5, 2.5}) {
    PoseVec9 est;
    est.t = Vec3(dx, 0, 0);
    const EvalResult ev = eval_estimate(dec, theta, est, theta, gt, 1024, 13);
    CHECK(ev.cd > prev_cd);
    CHECK(ev.iou <= prev_iou + 1e-9);
    prev_cd = ev.cd;
    prev_iou = ev.iou;
    if (dx >= 2.5) CHECK(ev.iou == 0.0);  // moved past its own extent
  }
}

}  // TEST_SUITE
