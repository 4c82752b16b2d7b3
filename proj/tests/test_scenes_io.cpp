#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "gom/errors.hpp"
#include "gom/rng.hpp"
#include "gom/scenes_io.hpp"

using namespace gom;

namespace {

struct Setup {
  BlobFieldDecoder dec{4};
  NoiseSchedule sched = schedule_make(100, 1e-4, 0.2);
  GmmDenoiser prior = make_category_blob_prior(sched, dec);
};

SceneSpec small_spec(uint64_t seed) {
  SceneSpec spec;
  spec.seed = seed;
  spec.n_objects = 1;
  spec.n_views = 3;
  spec.image_size = 48;
  spec.trajectory = Trajectory::ring_360;
  return spec;
}

double camera_azimuth(const CameraModel& cam) {
  const Vec3 p = cam.t_wc.m.topRightCorner<3, 1>();
  return std::atan2(p.y(), p.x());
}

}  // namespace

TEST_SUITE("scenes_io") {

TEST_CASE("identical seeds give byte-identical scenes") {
  Setup s;
  const SyntheticScene a = sample_scene(small_spec(42), s.prior, s.dec);
  const SyntheticScene b = sample_scene(small_spec(42), s.prior, s.dec);
  REQUIRE(a.frames.size() == b.frames.size());
  for (size_t i = 0; i < a.frames.size(); ++i) {
    CHECK(a.frames[i].rgb.data == b.frames[i].rgb.data);
    CHECK(a.frames[i].depth.data == b.frames[i].depth.data);
    CHECK(a.frames[i].mask_ids.data == b.frames[i].mask_ids.data);
  }
  CHECK((a.objects[0].theta - b.objects[0].theta).norm() == 0.0);

  const SyntheticScene c = sample_scene(small_spec(43), s.prior, s.dec);
  CHECK(a.frames[0].rgb.data != c.frames[0].rgb.data);
}

TEST_CASE("noise-free frames equal a ground-truth re-render") {
  Setup s;
  const SyntheticScene scene = sample_scene(small_spec(7), s.prior, s.dec);
  const std::vector<SceneFrame> again = render_scene_frames(scene, s.dec);
  REQUIRE(again.size() == scene.frames.size());
  for (size_t i = 0; i < again.size(); ++i) {
    CHECK(scene.frames[i].rgb.data == again[i].rgb.data);
    CHECK(scene.frames[i].depth.data == again[i].depth.data);
    CHECK(scene.frames[i].mask_ids.data == again[i].mask_ids.data);
  }
}

TEST_CASE("ring trajectory covers all azimuths") {
  Setup s;
  SceneSpec spec = small_spec(11);
  spec.n_views = 10;
  const SyntheticScene scene = sample_scene(spec, s.prior, s.dec);
  std::vector<double> az;
  for (const SceneFrame& f : scene.frames) az.push_back(camera_azimuth(f.camera));
  std::sort(az.begin(), az.end());
  const double nominal = 2.0 * kPi / 10;
  for (size_t i = 0; i < az.size(); ++i) {
    const double next = i + 1 < az.size() ? az[i + 1] : az[0] + 2.0 * kPi;
    const double gap = next - az[i];
    CHECK(gap > 0.3 * nominal);
    CHECK(gap < 1.7 * nominal);
  }
}

TEST_CASE("one-sided arc spans at most 90 degrees") {
  Setup s;
  for (uint64_t seed : {1, 2, 3, 4, 5}) {
    SceneSpec spec = small_spec(seed);
    spec.trajectory = Trajectory::one_sided_arc;
    spec.n_views = 8;
    const SyntheticScene scene = sample_scene(spec, s.prior, s.dec);
    std::vector<double> az;
    for (const SceneFrame& f : scene.frames) {
      az.push_back(camera_azimuth(f.camera));
    }
    // span measured as the smallest arc containing all azimuths
    std::sort(az.begin(), az.end());
    double widest_gap = az.front() + 2.0 * kPi - az.back();
    for (size_t i = 0; i + 1 < az.size(); ++i) {
      widest_gap = std::max(widest_gap, az[i + 1] - az[i]);
    }
    CHECK(2.0 * kPi - widest_gap <= kPi / 2 + 1e-9);
  }
}

TEST_CASE("masks are sound against the ground-truth field") {
  Setup s;
  SceneSpec spec = small_spec(19);
  spec.noise.depth_sigma = 0.03;
  const SyntheticScene scene = sample_scene(spec, s.prior, s.dec);
  const PoseMatrix t_ow = compose_pose(scene.objects[0].xi);
  const PoseMatrix t_wo = inverse_pose(t_ow);
  int total = 0, close = 0;
  for (const SceneFrame& f : scene.frames) {
    const Mat3 r_wc = f.camera.t_wc.m.topLeftCorner<3, 3>();
    const Vec3 t_wc = f.camera.t_wc.m.topRightCorner<3, 1>();
    for (int v = 0; v < f.mask_ids.height; ++v) {
      for (int u = 0; u < f.mask_ids.width; ++u) {
        if (f.mask_ids.at(u, v) != 1) continue;
        const double d = f.depth.at(u, v);
        if (!(d > 0.0)) continue;
        const Vec3 p_cam((u - f.camera.cx) * d / f.camera.fx,
                         (v - f.camera.cy) * d / f.camera.fy, d);
        const Vec3 world = r_wc * p_cam + t_wc;
        double sdf;
        Vec3 color;
        s.dec.decode(scene.objects[0].theta, transform_point(t_wo, world), sdf,
                     color);
        total++;
        // allowance: 3 sigma of depth noise plus the soft-surface shell
        if (std::abs(sdf) < 3.0 * spec.noise.depth_sigma + 0.12) close++;
        CHECK(std::abs(sdf) < 0.4);
      }
    }
  }
  REQUIRE(total > 200);
  CHECK(close >= 0.97 * total);
}

TEST_CASE("occluders steal pixels without being labelled") {
  Setup s;
  SceneSpec spec = small_spec(23);
  spec.occluders = 1;
  spec.trajectory = Trajectory::one_sided_arc;
  const SyntheticScene scene = sample_scene(spec, s.prior, s.dec);
  REQUIRE(scene.occluders.size() == 1);
  int unlabelled_hits = 0;
  for (const SceneFrame& f : scene.frames) {
    for (int v = 0; v < f.mask_ids.height; ++v) {
      for (int u = 0; u < f.mask_ids.width; ++u) {
        if (f.depth.at(u, v) > 0.0 && f.mask_ids.at(u, v) == 0) unlabelled_hits++;
      }
    }
  }
  CHECK(unlabelled_hits > 50);
}

TEST_CASE("mask erosion shrinks instance masks") {
  Setup s;
  SceneSpec plain = small_spec(29);
  SceneSpec eroded = small_spec(29);
  eroded.noise.mask_erosion = 2;
  const SyntheticScene a = sample_scene(plain, s.prior, s.dec);
  const SyntheticScene b = sample_scene(eroded, s.prior, s.dec);
  for (size_t i = 0; i < a.frames.size(); ++i) {
    int na = 0, nb = 0;
    for (size_t j = 0; j < a.frames[i].mask_ids.data.size(); ++j) {
      na += a.frames[i].mask_ids.data[j] != 0;
      nb += b.frames[i].mask_ids.data[j] != 0;
      // erosion never adds pixels
      if (b.frames[i].mask_ids.data[j] != 0) {
        CHECK(a.frames[i].mask_ids.data[j] != 0);
      }
    }
    CHECK(nb < na);
  }
}

TEST_CASE("save/load round trip") {
  Setup s;
  SceneSpec spec = small_spec(31);
  spec.n_views = 10;
  const SyntheticScene scene = sample_scene(spec, s.prior, s.dec);
  const auto dir = std::filesystem::temp_directory_path() / "gom_scene_rt";
  std::filesystem::remove_all(dir);
  save_scene(scene, dir);

  // 10 views -> 10 ppm + 10 pfm + 10 pgm + 1 manifest
  int ppm = 0, pfm = 0, pgm = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "frames")) {
    const auto ext = entry.path().extension();
    ppm += ext == ".ppm";
    pfm += ext == ".pfm";
    pgm += ext == ".pgm";
  }
  CHECK(ppm == 10);
  CHECK(pfm == 10);
  CHECK(pgm == 10);
  CHECK(std::filesystem::exists(dir / "manifest.json"));

  const SyntheticScene loaded = load_scene(dir);
  CHECK(loaded.objects.size() == scene.objects.size());
  CHECK((loaded.objects[0].theta - scene.objects[0].theta).norm() == 0.0);
  CHECK((loaded.objects[0].xi.to_vector() - scene.objects[0].xi.to_vector())
            .norm() == 0.0);
  CHECK(loaded.spec.render.kappa == scene.spec.render.kappa);
  // masks and float depth are lossless; rgb within 8-bit quantization
  for (size_t i = 0; i < scene.frames.size(); ++i) {
    CHECK(loaded.frames[i].mask_ids.data == scene.frames[i].mask_ids.data);
    for (size_t j = 0; j < scene.frames[i].rgb.data.size(); ++j) {
      CHECK(std::abs(loaded.frames[i].rgb.data[j] - scene.frames[i].rgb.data[j]) <=
            0.5 / 255.0 + 1e-12);
    }
  }

  // save -> load -> save produces byte-identical manifests
  const auto dir2 = std::filesystem::temp_directory_path() / "gom_scene_rt2";
  std::filesystem::remove_all(dir2);
  save_scene(loaded, dir2);
  std::ifstream m1(dir / "manifest.json"), m2(dir2 / "manifest.json");
  const std::string s1((std::istreambuf_iterator<char>(m1)), {});
  const std::string s2((std::istreambuf_iterator<char>(m2)), {});
  CHECK(s1 == s2);
}

TEST_CASE("manifest version is enforced") {
  Setup s;
  const SyntheticScene scene = sample_scene(small_spec(37), s.prior, s.dec);
  const auto dir = std::filesystem::temp_directory_path() / "gom_scene_ver";
  std::filesystem::remove_all(dir);
  save_scene(scene, dir);
  // tamper with the version field
  std::ifstream in(dir / "manifest.json");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  in.close();
  const auto at = text.find("gom-scene/1");
  REQUIRE(at != std::string::npos);
  text.replace(at, 11, "gom-scene/9");
  std::ofstream out(dir / "manifest.json");
  out << text;
  out.close();
  CHECK_THROWS_AS(load_scene(dir), ManifestVersionMismatch);
  CHECK_THROWS_AS(load_scene(dir / "nowhere"), IoFailure);
}

TEST_CASE("placement gives up on impossible scenes") {
  Setup s;
  SceneSpec spec = small_spec(41);
  spec.n_objects = 40;  // cannot pack without overlap
  spec.n_views = 1;
  CHECK_THROWS_AS(sample_scene(spec, s.prior, s.dec), PlacementFailure);
}

TEST_CASE("multi-object masks partition per object") {
  Setup s;
  SceneSpec spec = small_spec(43);
  spec.n_objects = 3;
  spec.categories = {0, 1, 2};
  const SyntheticScene scene = sample_scene(spec, s.prior, s.dec);
  REQUIRE(scene.objects.size() == 3);
  // ids in range; per-object views select exactly their id
  for (const SceneFrame& f : scene.frames) {
    for (uint8_t id : f.mask_ids.data) CHECK(id <= 3);
  }
  const ObservationFrame v1 = object_view(scene.frames[0], 1);
  for (int v = 0; v < v1.mask.height; ++v) {
    for (int u = 0; u < v1.mask.width; ++u) {
      CHECK((v1.mask.at(u, v) == 1) ==
            (scene.frames[0].mask_ids.at(u, v) == 2));
    }
  }
}

}  // TEST_SUITE
