#include <doctest.h>

#include <random>

#include "gom/errors.hpp"
#include "gom/lie_pose.hpp"
#include "gom/rng.hpp"

using namespace gom;

namespace {

// Independent oracle: truncated power series of the matrix exponential.
Mat3 exp_series(const Vec3& phi) {
  const Mat3 k = skew(phi);
  Mat3 acc = Mat3::Identity();
  Mat3 term = Mat3::Identity();
  for (int n = 1; n <= 30; ++n) {
    term = term * k / n;
    acc += term;
  }
  return acc;
}

Vec3 random_axis_angle(std::mt19937_64& rng, double max_angle) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, max_angle);
  Vec3 axis(normal(rng), normal(rng), normal(rng));
  axis.normalize();
  return uni(rng) * axis;
}

PoseVec9 random_pose(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  PoseVec9 xi;
  xi.t = Vec3(uni(rng), uni(rng), uni(rng)) * 2.0;
  xi.phi = random_axis_angle(rng, 2.5);
  xi.s = Vec3(0.5 + 0.4 * (uni(rng) + 1.0), 0.5 + 0.4 * (uni(rng) + 1.0),
              0.5 + 0.4 * (uni(rng) + 1.0));
  return xi;
}

}  // namespace

TEST_SUITE("lie_pose") {

TEST_CASE("exp_so3 identity and quarter turn") {
  CHECK((exp_so3(Vec3::Zero()) - Mat3::Identity()).norm() == 0.0);

  const Mat3 r = exp_so3(Vec3(0, 0, kPi / 2));
  const Vec3 rotated = r * Vec3(1, 0, 0);
  CHECK((rotated - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("exp_so3 matches the power-series oracle") {
  std::mt19937_64 rng = make_rng(11);
  for (int i = 0; i < 100; ++i) {
    const Vec3 phi = random_axis_angle(rng, 3.0);
    CHECK((exp_so3(phi) - exp_series(phi)).norm() < 1e-12);
  }
  // small-angle branch
  for (double mag : {1e-9, 1e-10, 1e-12}) {
    const Vec3 phi = mag * Vec3(1, -2, 0.5).normalized();
    CHECK((exp_so3(phi) - exp_series(phi)).norm() < 1e-15);
  }
}

TEST_CASE("log_so3 basics") {
  CHECK(log_so3(Mat3::Identity()).norm() == 0.0);

  // rotation by pi about z: axis recovered up to sign, angle pi
  const Vec3 phi = log_so3(exp_so3(Vec3(0, 0, kPi)));
  CHECK(phi.norm() == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(std::abs(phi.normalized().dot(Vec3(0, 0, 1))) ==
        doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(log_so3(2.0 * Mat3::Identity()), NotARotation);
  Mat3 reflection = Mat3::Identity();
  reflection(2, 2) = -1.0;
  CHECK_THROWS_AS(log_so3(reflection), NotARotation);
}

TEST_CASE("exp/log round trips") {
  std::mt19937_64 rng = make_rng(12);
  for (int i = 0; i < 100; ++i) {
    const Vec3 phi = random_axis_angle(rng, kPi - 1e-3);
    const Vec3 back = log_so3(exp_so3(phi));
    CHECK((back - phi).norm() < 1e-9);

    const Mat3 r = exp_so3(random_axis_angle(rng, kPi));
    CHECK((exp_so3(log_so3(r)) - r).norm() < 1e-10);
  }
}

TEST_CASE("compose_pose examples") {
  CHECK((compose_pose(PoseVec9::identity()).m - Mat4::Identity()).norm() == 0.0);

  PoseVec9 xi;
  xi.s = Vec3(2, 2, 2);
  CHECK((transform_point(compose_pose(xi), Vec3(1, 1, 1)) - Vec3(2, 2, 2)).norm() <
        1e-15);

  PoseVec9 bad;
  bad.s = Vec3(1, -1, 1);
  CHECK_THROWS_AS(compose_pose(bad), NonPositiveScale);
}

TEST_CASE("transform matches the closed form R diag(s) x + t") {
  std::mt19937_64 rng = make_rng(13);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const PoseVec9 xi = random_pose(rng);
    const Vec3 x(normal(rng), normal(rng), normal(rng));
    const Vec3 direct =
        exp_so3(xi.phi) * xi.s.cwiseProduct(x) + xi.t;
    CHECK((transform_point(compose_pose(xi), x) - direct).norm() < 1e-12);
  }
}

TEST_CASE("decompose_pose inverts compose_pose") {
  CHECK(decompose_pose(PoseMatrix{}).to_vector().isApprox(
      PoseVec9::identity().to_vector()));

  std::mt19937_64 rng = make_rng(14);
  for (int i = 0; i < 100; ++i) {
    const PoseVec9 xi = random_pose(rng);
    const PoseMatrix t = compose_pose(xi);
    const PoseVec9 back = decompose_pose(t);
    CHECK((compose_pose(back).m - t.m).norm() < 1e-10);
  }

  PoseMatrix mirror;
  mirror.m(0, 0) = -1.0;  // reflection
  CHECK_THROWS_AS(decompose_pose(mirror), gom::Error);

  PoseMatrix squashed;
  squashed.m(0, 0) = 0.0;
  squashed.m(1, 0) = 0.0;
  squashed.m(2, 0) = 0.0;
  CHECK_THROWS_AS(decompose_pose(squashed), DegenerateScale);
}

TEST_CASE("inverse_pose round trip") {
  std::mt19937_64 rng = make_rng(15);
  for (int i = 0; i < 20; ++i) {
    const PoseMatrix t = compose_pose(random_pose(rng));
    CHECK((inverse_pose(t).m * t.m - Mat4::Identity()).norm() < 1e-10);
  }
}

TEST_CASE("pose_point_jacobian identity blocks") {
  const Vec3 x(0.3, -1.2, 0.7);
  const Jac3x9 j = pose_point_jacobian(PoseVec9::identity(), x);
  CHECK((j.block<3, 3>(0, 0) - Mat3::Identity()).norm() == 0.0);
  CHECK((j.block<3, 3>(0, 6) - Mat3(x.asDiagonal())).norm() < 1e-15);
}

TEST_CASE("pose_point_jacobian matches central differences") {
  std::mt19937_64 rng = make_rng(16);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    const PoseVec9 xi = random_pose(rng);
    const Vec3 x(normal(rng), normal(rng), normal(rng));
    const Jac3x9 j = pose_point_jacobian(xi, x);
    const Vec9 base = xi.to_vector();
    for (int k = 0; k < 9; ++k) {
      Vec9 hi = base, lo = base;
      hi[k] += h;
      lo[k] -= h;
      const Vec3 fd = (transform_point(compose_pose(PoseVec9::from_vector(hi)), x) -
                       transform_point(compose_pose(PoseVec9::from_vector(lo)), x)) /
                      (2 * h);
      for (int r = 0; r < 3; ++r) {
        const double denom = std::max(std::abs(fd[r]), 1e-3);
        CHECK(std::abs(j(r, k) - fd[r]) / denom < 1e-5);
      }
    }
  }
}

}  // TEST_SUITE
