#include <doctest.h>

#include <random>

#include "gom/errors.hpp"
#include "gom/icp_init.hpp"
#include "gom/metrics.hpp"
#include "gom/rng.hpp"
#include "gom/scenes_io.hpp"

using namespace gom;

namespace {

PointCloud random_cloud(int n, std::mt19937_64& rng, double spread = 1.0) {
  std::normal_distribution<double> normal(0.0, spread);
  PointCloud c;
  for (int i = 0; i < n; ++i) {
    c.points.emplace_back(normal(rng), normal(rng), normal(rng));
  }
  return c;
}

PointCloud apply(const PoseVec9& xi, const PointCloud& in) {
  const PoseMatrix t = compose_pose(xi);
  PointCloud out;
  for (const Vec3& p : in.points) out.points.push_back(transform_point(t, p));
  return out;
}

double residual(const PoseVec9& xi, const PointCloud& src, const PointCloud& dst) {
  const PoseMatrix t = compose_pose(xi);
  double acc = 0.0;
  for (size_t i = 0; i < src.points.size(); ++i) {
    acc += (transform_point(t, src.points[i]) - dst.points[i]).squaredNorm();
  }
  return acc;
}

}  // namespace

TEST_SUITE("icp_init") {

TEST_CASE("umeyama identity and exact recovery") {
  std::mt19937_64 rng = make_rng(71);
  const PointCloud src = random_cloud(40, rng);
  const PoseVec9 id = umeyama_align(src, src);
  CHECK(id.t.norm() < 1e-12);
  CHECK(id.phi.norm() < 1e-9);
  CHECK((id.s - Vec3::Ones()).norm() < 1e-12);

  PoseVec9 gt;
  gt.t = Vec3(0.4, -1.0, 2.0);
  gt.phi = Vec3(0.2, -0.5, 0.9);
  gt.s = Vec3::Constant(1.7);
  const PointCloud dst = apply(gt, src);
  const PoseVec9 rec = umeyama_align(src, dst);
  CHECK((rec.t - gt.t).norm() < 1e-8);
  CHECK((rec.phi - gt.phi).norm() < 1e-8);
  CHECK((rec.s - gt.s).norm() < 1e-8);
}

TEST_CASE("umeyama beats random similarity transforms") {
  std::mt19937_64 rng = make_rng(72);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const PointCloud src = random_cloud(30, rng);
  PointCloud dst = apply(
      PoseVec9{Vec3(1, 0, -0.5), Vec3(0, 0.4, 0.2), Vec3::Constant(0.8)}, src);
  for (Vec3& p : dst.points) {  // noise so no transform is exact
    p += 0.05 * Vec3(normal(rng), normal(rng), normal(rng));
  }
  const PoseVec9 best = umeyama_align(src, dst);
  const double best_res = residual(best, src, dst);
  for (int i = 0; i < 1000; ++i) {
    PoseVec9 cand;
    cand.t = best.t + 0.2 * Vec3(normal(rng), normal(rng), normal(rng));
    Vec3 axis(normal(rng), normal(rng), normal(rng));
    cand.phi = best.phi + 0.2 * uni(rng) * axis.normalized();
    cand.s = best.s * (0.8 + 0.4 * uni(rng));
    CHECK(residual(cand, src, dst) >= best_res - 1e-12);
  }
}

TEST_CASE("umeyama degenerate input") {
  PointCloud line_src, line_dst;
  for (int i = 0; i < 10; ++i) {
    line_src.points.emplace_back(i, 0.0, 0.0);  // rank-1 spread
    line_dst.points.emplace_back(0.0, i, 0.0);
  }
  CHECK_THROWS_AS(umeyama_align(line_src, line_dst), DegenerateConfiguration);

  PointCloud two;
  two.points = {Vec3(0, 0, 0), Vec3(1, 1, 1)};
  CHECK_THROWS_AS(umeyama_align(two, two), DegenerateConfiguration);
}

TEST_CASE("icp on identical clouds stays put") {
  std::mt19937_64 rng = make_rng(73);
  const PointCloud cloud = random_cloud(60, rng);
  const IcpResult res = icp_align(cloud, cloud, PoseVec9::identity());
  CHECK(res.rmse < 1e-12);
  CHECK(res.pose.t.norm() < 1e-9);
  CHECK(res.pose.phi.norm() < 1e-9);
}

TEST_CASE("icp recovers a 15 degree rotation") {
  std::mt19937_64 rng = make_rng(74);
  const PointCloud src = random_cloud(200, rng);
  PoseVec9 gt;
  gt.phi = Vec3(0, 0, 15.0 * kPi / 180.0);
  gt.t = Vec3(0.05, -0.03, 0.08);
  const PointCloud dst = apply(gt, src);
  const IcpResult res = icp_align(src, dst, PoseVec9::identity(), 80, 1e-10);
  CHECK(std::abs(res.pose.phi.norm() - gt.phi.norm()) < kPi / 180.0);
  CHECK((res.pose.t - gt.t).norm() < 0.01 * (1.0 + gt.t.norm()));
}

TEST_CASE("icp rmse trace is nonincreasing") {
  std::mt19937_64 rng = make_rng(75);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const PointCloud src = random_cloud(80, rng);
    PoseVec9 gt;
    Vec3 axis(normal(rng), normal(rng), normal(rng));
    gt.phi = 0.3 * axis.normalized();
    gt.t = 0.3 * Vec3(normal(rng), normal(rng), normal(rng));
    gt.s = Vec3::Constant(0.9 + 0.01 * trial);
    PointCloud dst = apply(gt, src);
    for (Vec3& p : dst.points) {
      p += 0.02 * Vec3(normal(rng), normal(rng), normal(rng));
    }
    const IcpResult res = icp_align(src, dst, PoseVec9::identity());
    for (size_t i = 1; i < res.rmse_trace.size(); ++i) {
      CHECK(res.rmse_trace[i] <= res.rmse_trace[i - 1] + 1e-12);
    }
  }
}

TEST_CASE("backproject recovers the sphere surface") {
  // exact z-depths from closed-form ray/sphere intersection
  CameraModel cam;
  cam.width = cam.height = 49;
  cam.fx = cam.fy = 55.0;
  cam.cx = cam.cy = 24.0;
  const Vec3 pos(0, -3.5, 1.2);
  const Vec3 fwd = (-pos).normalized();
  Vec3 right = fwd.cross(Vec3::UnitZ()).normalized();
  const Vec3 down = fwd.cross(right);
  cam.t_wc.m.setIdentity();
  cam.t_wc.m.block<3, 1>(0, 0) = right;
  cam.t_wc.m.block<3, 1>(0, 1) = down;
  cam.t_wc.m.block<3, 1>(0, 2) = fwd;
  cam.t_wc.m.block<3, 1>(0, 3) = pos;

  ObservationFrame view;
  view.camera = cam;
  view.rgb = ImageRgb(cam.width, cam.height);
  view.depth = ImageGray(cam.width, cam.height);
  view.mask = ImageMask(cam.width, cam.height);
  const Mat3 r_wc = cam.t_wc.m.topLeftCorner<3, 3>();
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      Vec3 dir_cam((u - cam.cx) / cam.fx, (v - cam.cy) / cam.fy, 1.0);
      const double cosine = 1.0 / dir_cam.norm();
      dir_cam.normalize();
      const Vec3 d = r_wc * dir_cam;
      const double b = pos.dot(d);
      const double disc = b * b - (pos.squaredNorm() - 1.0);
      if (disc <= 0.0) continue;
      const double tau = -b - std::sqrt(disc);
      if (tau <= 0.0) continue;
      view.depth.set(u, v, tau * cosine);
      view.mask.set(u, v, 1);
    }
  }

  std::vector<ObservationFrame> views{view};
  const PointCloud cloud = backproject(views);
  REQUIRE(cloud.points.size() > 100);
  for (const Vec3& p : cloud.points) {
    CHECK(std::abs(p.norm() - 1.0) < 1e-3);
  }

  // two copies of the frame double the count
  std::vector<ObservationFrame> twice{view, view};
  CHECK(backproject(twice).points.size() == 2 * cloud.points.size());

  ObservationFrame blank = view;
  std::fill(blank.mask.data.begin(), blank.mask.data.end(), 0);
  std::vector<ObservationFrame> empty{blank};
  CHECK_THROWS_AS(backproject(empty), NoValidPixels);
}

TEST_CASE("init_pose beats the centroid-only guess") {
  const BlobFieldDecoder dec(4);
  const NoiseSchedule sched = schedule_make(100, 1e-4, 0.2);
  const GmmDenoiser prior = make_category_blob_prior(sched, dec);

  int icp_wins = 0;
  const int trials = 20;
  for (int trial = 0; trial < trials; ++trial) {
    SceneSpec spec;
    spec.seed = 9000 + trial;
    spec.n_objects = 1;
    spec.n_views = 3;
    spec.trajectory = Trajectory::ring_360;
    spec.image_size = 48;
    spec.categories = {trial % 3};
    spec.decoder = DecoderSpec{};
    const SyntheticScene scene = sample_scene(spec, prior, dec);
    const auto views = object_views(scene, 0);

    std::mt19937_64 rng = make_rng(derive_seed(4000, trial));
    const PoseVec9 icp_pose =
        init_pose(dec, views, prior, scene.objects[0].category, rng);

    // centroid/extent-only initialization for comparison
    const PointCloud dst = backproject(views);
    std::mt19937_64 rng2 = make_rng(derive_seed(4001, trial));
    const MatX src_pts = sample_surface_points(
        dec, prior.mixture_mean(scene.objects[0].category), 512, rng2);
    Vec3 mu_s = Vec3::Zero(), mu_d = Vec3::Zero();
    Vec3 lo_s = src_pts.row(0), hi_s = src_pts.row(0);
    Vec3 lo_d = dst.points[0], hi_d = dst.points[0];
    for (int i = 0; i < src_pts.rows(); ++i) {
      const Vec3 p = src_pts.row(i);
      mu_s += p;
      lo_s = lo_s.cwiseMin(p);
      hi_s = hi_s.cwiseMax(p);
    }
    mu_s /= src_pts.rows();
    for (const Vec3& p : dst.points) {
      mu_d += p;
      lo_d = lo_d.cwiseMin(p);
      hi_d = hi_d.cwiseMax(p);
    }
    mu_d /= static_cast<double>(dst.points.size());
    PoseVec9 centroid_pose;
    const double c = (hi_d - lo_d).norm() / (hi_s - lo_s).norm();
    centroid_pose.s = Vec3::Constant(c);
    centroid_pose.t = mu_d - c * mu_s;

    const VecX mean_latent = prior.mixture_mean(scene.objects[0].category);
    const auto chamfer_of = [&](const PoseVec9& xi) {
      const PointCloud est = world_surface_cloud(dec, mean_latent, xi, 512, 7);
      const PointCloud gt = world_surface_cloud(
          dec, scene.objects[0].theta, scene.objects[0].xi, 512, 8);
      return chamfer(est, gt);
    };
    if (chamfer_of(icp_pose) < chamfer_of(centroid_pose)) icp_wins++;
  }
  CHECK(icp_wins >= 0.9 * trials);

  // deterministic under the seed
  SceneSpec spec;
  spec.seed = 77;
  spec.n_views = 2;
  spec.image_size = 48;
  const SyntheticScene scene = sample_scene(spec, prior, dec);
  const auto views = object_views(scene, 0);
  std::mt19937_64 ra = make_rng(5), rb = make_rng(5);
  const PoseVec9 a = init_pose(dec, views, prior, 0, ra);
  const PoseVec9 b = init_pose(dec, views, prior, 0, rb);
  CHECK((a.to_vector() - b.to_vector()).norm() == 0.0);
}

}  // TEST_SUITE
