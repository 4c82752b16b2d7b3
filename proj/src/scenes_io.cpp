#include "gom/scenes_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "gom/errors.hpp"
#include "gom/metrics.hpp"
#include "gom/rng.hpp"

namespace gom {

using nlohmann::json;

std::string to_string(Trajectory t) {
  return t == Trajectory::one_sided_arc ? "one_sided_arc" : "ring_360";
}

std::unique_ptr<ShapeDecoder> make_decoder(const DecoderSpec& spec) {
  if (spec.kind == "blob") {
    return std::make_unique<BlobFieldDecoder>(spec.blobs, spec.beta_smooth);
  }
  if (spec.kind == "grid") {
    const Vec3 ext = Vec3::Constant(spec.grid_extent);
    return std::make_unique<GridFieldDecoder>(spec.grid_resolution,
                                              Eigen::AlignedBox3d(-ext, ext));
  }
  throw ConfigError("unknown decoder kind: " + spec.kind);
}

Trajectory trajectory_from_string(const std::string& s) {
  if (s == "one_sided_arc") return Trajectory::one_sided_arc;
  if (s == "ring_360") return Trajectory::ring_360;
  throw ConfigError("unknown trajectory: " + s);
}

namespace {

// Camera at p looking at target, world z up; camera x right, y down, z forward.
PoseMatrix look_at(const Vec3& p, const Vec3& target) {
  const Vec3 fwd = (target - p).normalized();
  Vec3 right = fwd.cross(Vec3::UnitZ());
  if (right.norm() < 1e-6) right = Vec3::UnitX();  // looking straight up/down
  right.normalize();
  const Vec3 down = fwd.cross(right);
  PoseMatrix t;
  t.m.setIdentity();
  t.m.block<3, 1>(0, 0) = right;
  t.m.block<3, 1>(0, 1) = down;
  t.m.block<3, 1>(0, 2) = fwd;
  t.m.block<3, 1>(0, 3) = p;
  return t;
}

std::vector<CameraModel> make_trajectory(const SceneSpec& spec,
                                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<CameraModel> cams;
  const int w = spec.image_size, h = spec.image_size;
  const double base_az = uni(rng) * 2.0 * kPi;
  for (int k = 0; k < spec.n_views; ++k) {
    double az;
    if (spec.trajectory == Trajectory::ring_360) {
      const double jitter = (uni(rng) - 0.5) * 0.5 * (2.0 * kPi / spec.n_views);
      az = base_az + 2.0 * kPi * k / spec.n_views + jitter;
    } else {
      // arc spanning at most 80 degrees of azimuth
      az = base_az + (uni(rng) - 0.5) * (80.0 * kPi / 180.0);
    }
    const double elev = (25.0 + 15.0 * uni(rng)) * kPi / 180.0;
    const double radius = spec.camera_radius * (0.9 + 0.2 * uni(rng));
    const Vec3 pos(radius * std::cos(elev) * std::cos(az),
                   radius * std::cos(elev) * std::sin(az),
                   radius * std::sin(elev));
    CameraModel cam;
    cam.width = w;
    cam.height = h;
    cam.fx = cam.fy = 1.1 * w;  // ~49 degree horizontal fov
    cam.cx = (w - 1) / 2.0;
    cam.cy = (h - 1) / 2.0;
    cam.t_wc = look_at(pos, Vec3::Zero());
    cams.push_back(cam);
  }
  return cams;
}

Aabb world_box_of(const ShapeDecoder& dec, const SceneObjectGt& obj,
                  uint64_t seed) {
  return world_bbox(dec, obj.theta, obj.xi, 512, seed);
}

std::vector<SceneObjectRef> scene_refs(const SyntheticScene& scene) {
  std::vector<SceneObjectRef> refs;
  for (const auto& o : scene.objects) refs.push_back({nullptr, &o.theta, o.xi});
  for (const auto& o : scene.occluders) refs.push_back({nullptr, &o.theta, o.xi});
  return refs;
}

}  // namespace

std::vector<SceneFrame> render_scene_frames(const SyntheticScene& scene,
                                            const ShapeDecoder& dec) {
  std::vector<SceneObjectRef> refs = scene_refs(scene);
  for (auto& r : refs) r.decoder = &dec;
  const int n_tracked = static_cast<int>(scene.objects.size());

  std::vector<SceneFrame> frames;
  for (const CameraModel& cam : [&] {
         std::vector<CameraModel> cams;
         for (const auto& f : scene.frames) cams.push_back(f.camera);
         return cams;
       }()) {
    std::vector<std::pair<int, int>> pixels;
    pixels.reserve(static_cast<size_t>(cam.width) * cam.height);
    for (int v = 0; v < cam.height; ++v)
      for (int u = 0; u < cam.width; ++u) pixels.emplace_back(u, v);
    const RayBatch rays = generate_rays(cam, pixels);
    const SceneRender render = render_scene_rays(refs, rays, scene.spec.render);

    SceneFrame frame;
    frame.camera = cam;
    frame.rgb = ImageRgb(cam.width, cam.height);
    frame.depth = ImageGray(cam.width, cam.height);
    frame.mask_ids = ImageMask(cam.width, cam.height);
    for (size_t i = 0; i < rays.rays.size(); ++i) {
      const int u = rays.rays[i].u, v = rays.rays[i].v;
      const RenderedRay& rr = render.rays[i];
      frame.rgb.set(u, v, rr.rgb);
      // depth is only trustworthy where the ray is fully absorbed; grazing
      // silhouette pixels stay invalid, like real sensor dropouts
      if (rr.opacity > 0.98) {
        frame.depth.set(u, v, rr.depth);
      }
      if (rr.opacity > 0.5) {
        int best = 0;
        for (int o = 1; o < render.object_weight.cols(); ++o) {
          if (render.object_weight(static_cast<int>(i), o) >
              render.object_weight(static_cast<int>(i), best)) {
            best = o;
          }
        }
        const double frac =
            render.object_weight(static_cast<int>(i), best) / rr.opacity;
        if (best < n_tracked && frac > 0.6) {
          frame.mask_ids.set(u, v, static_cast<uint8_t>(best + 1));
        }
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

SyntheticScene sample_scene(const SceneSpec& spec, const GmmDenoiser& prior,
                            const ShapeDecoder& dec) {
  if (spec.n_views < 1) throw ConfigError("sample_scene: n_views must be >= 1");
  SyntheticScene scene;
  scene.spec = spec;

  std::mt19937_64 rng_shape = make_rng(derive_seed(spec.seed, 0x7368));
  std::mt19937_64 rng_pose = make_rng(derive_seed(spec.seed, 0x706f));
  std::mt19937_64 rng_cam = make_rng(derive_seed(spec.seed, 0x6361));
  std::mt19937_64 rng_noise = make_rng(derive_seed(spec.seed, 0x6e6f));
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  // objects: latent from the prior, pose rejection-sampled for low overlap;
  // the placement box grows with the object count
  const double half = std::min(1.2 + 0.35 * (spec.n_objects - 1), 2.6);
  std::vector<Aabb> placed;
  for (int i = 0; i < spec.n_objects; ++i) {
    SceneObjectGt obj;
    obj.category = spec.categories.empty()
                       ? i % prior.n_categories()
                       : spec.categories[i % spec.categories.size()];
    obj.theta = prior.sample_latent(obj.category, rng_shape);
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      obj.xi.t = Vec3((uni(rng_pose) - 0.5) * 2.0 * half,
                      (uni(rng_pose) - 0.5) * 2.0 * half,
                      (uni(rng_pose) - 0.5) * 0.4);
      if (spec.n_objects == 1) obj.xi.t *= 0.4;  // keep lone objects central
      obj.xi.phi = Vec3(0.0, 0.0, (uni(rng_pose) - 0.5) * (kPi / 3.0));
      obj.xi.s = Vec3(0.85 + 0.35 * uni(rng_pose), 0.85 + 0.35 * uni(rng_pose),
                      0.85 + 0.35 * uni(rng_pose));
      const Aabb box = world_box_of(dec, obj, derive_seed(spec.seed, 0xb0, i));
      ok = true;
      for (const Aabb& other : placed) {
        if (iou_bbox(box, other) > 0.05) {
          ok = false;
          break;
        }
      }
      if (ok) placed.push_back(box);
    }
    if (!ok) {
      throw PlacementFailure("sample_scene: could not place object " +
                             std::to_string(i));
    }
    scene.objects.push_back(std::move(obj));
  }

  scene.frames.clear();
  const std::vector<CameraModel> cams = make_trajectory(spec, rng_cam);
  for (const CameraModel& cam : cams) {
    SceneFrame f;
    f.camera = cam;
    scene.frames.push_back(std::move(f));
  }

  // occluders: small untracked blobs between the cameras and a target object
  Vec3 mean_cam = Vec3::Zero();
  for (const auto& cam : cams) mean_cam += cam.t_wc.m.topRightCorner<3, 1>();
  mean_cam /= static_cast<double>(cams.size());
  const auto* blob_dec = dynamic_cast<const BlobFieldDecoder*>(&dec);
  for (int i = 0; i < spec.occluders; ++i) {
    const SceneObjectGt& target = scene.objects[i % scene.objects.size()];
    SceneObjectGt occ;
    occ.category = -1;
    if (blob_dec) {
      std::vector<Vec3> centers, colors;
      std::vector<double> radii;
      for (int b = 0; b < blob_dec->n_blobs(); ++b) {
        centers.push_back(Vec3((uni(rng_pose) - 0.5) * 0.5,
                               (uni(rng_pose) - 0.5) * 0.5,
                               (uni(rng_pose) - 0.5) * 0.5));
        radii.push_back(0.25 + 0.2 * uni(rng_pose));
        colors.push_back(Vec3(0.2 + 0.6 * uni(rng_pose), 0.2 + 0.6 * uni(rng_pose),
                              0.2 + 0.6 * uni(rng_pose)));
      }
      occ.theta = blob_dec->encode(centers, radii, colors);
    } else {
      occ.theta = prior.sample_latent(0, rng_shape);
    }
    const double frac = 0.3 + 0.2 * uni(rng_pose);
    occ.xi.t = target.xi.t + frac * (mean_cam - target.xi.t);
    occ.xi.t += Vec3((uni(rng_pose) - 0.5) * 0.6, (uni(rng_pose) - 0.5) * 0.6,
                     (uni(rng_pose) - 0.5) * 0.6);
    occ.xi.s = Vec3::Constant(0.35 + 0.25 * uni(rng_pose));
    scene.occluders.push_back(std::move(occ));
  }

  scene.frames = render_scene_frames(scene, dec);
  for (size_t i = 0; i < scene.frames.size(); ++i) {
    scene.frames[i].camera = cams[i];
  }

  // sensor noise + mask corruption
  const NoiseModel& noise = spec.noise;
  if (noise.depth_sigma > 0.0 || noise.dropout_p > 0.0 || noise.mask_erosion > 0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (SceneFrame& f : scene.frames) {
      for (int v = 0; v < f.depth.height; ++v) {
        for (int u = 0; u < f.depth.width; ++u) {
          double d = f.depth.at(u, v);
          if (d > 0.0 && noise.depth_sigma > 0.0) {
            d = std::max(0.0, d + noise.depth_sigma * gauss(rng_noise));
          }
          if (d > 0.0 && noise.dropout_p > 0.0 && uni(rng_noise) < noise.dropout_p) {
            d = 0.0;
          }
          f.depth.set(u, v, d);
        }
      }
      for (int pass = 0; pass < noise.mask_erosion; ++pass) {
        ImageMask eroded = f.mask_ids;
        for (int v = 0; v < f.mask_ids.height; ++v) {
          for (int u = 0; u < f.mask_ids.width; ++u) {
            const uint8_t id = f.mask_ids.at(u, v);
            if (id == 0) continue;
            const bool edge =
                u == 0 || v == 0 || u == f.mask_ids.width - 1 ||
                v == f.mask_ids.height - 1 || f.mask_ids.at(u - 1, v) != id ||
                f.mask_ids.at(u + 1, v) != id || f.mask_ids.at(u, v - 1) != id ||
                f.mask_ids.at(u, v + 1) != id;
            if (edge) eroded.set(u, v, 0);
          }
        }
        f.mask_ids = eroded;
      }
    }
  }
  return scene;
}

ObservationFrame object_view(const SceneFrame& frame, int object_index) {
  ObservationFrame obs;
  obs.rgb = frame.rgb;
  obs.depth = frame.depth;
  obs.camera = frame.camera;
  obs.mask = ImageMask(frame.mask_ids.width, frame.mask_ids.height);
  const uint8_t id = static_cast<uint8_t>(object_index + 1);
  for (size_t i = 0; i < frame.mask_ids.data.size(); ++i) {
    obs.mask.data[i] = frame.mask_ids.data[i] == id ? 1 : 0;
  }
  return obs;
}

std::vector<ObservationFrame> object_views(const SyntheticScene& scene,
                                           int object_index) {
  std::vector<ObservationFrame> views;
  views.reserve(scene.frames.size());
  for (const SceneFrame& f : scene.frames) {
    views.push_back(object_view(f, object_index));
  }
  return views;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr const char* kSceneVersion = "gom-scene/1";

json pose_to_json(const PoseVec9& xi) {
  const Vec9 v = xi.to_vector();
  return std::vector<double>(v.data(), v.data() + 9);
}

PoseVec9 pose_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 9) throw FileFormatError("pose must have 9 entries");
  return PoseVec9::from_vector(Eigen::Map<const Vec9>(v.data()));
}

json vec_to_json(const VecX& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

VecX vec_from_json(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const VecX>(v.data(), static_cast<int>(v.size()));
}

json object_to_json(const SceneObjectGt& o) {
  return {{"category", o.category},
          {"xi", pose_to_json(o.xi)},
          {"theta", vec_to_json(o.theta)}};
}

SceneObjectGt object_from_json(const json& j) {
  SceneObjectGt o;
  o.category = j.at("category").get<int>();
  o.xi = pose_from_json(j.at("xi"));
  o.theta = vec_from_json(j.at("theta"));
  return o;
}

json camera_to_json(const CameraModel& c) {
  std::vector<double> twc(16);
  Eigen::Map<Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(twc.data()) = c.t_wc.m;
  return {{"fx", c.fx},     {"fy", c.fy},         {"cx", c.cx},
          {"cy", c.cy},     {"width", c.width},   {"height", c.height},
          {"t_wc", twc}};
}

CameraModel camera_from_json(const json& j) {
  CameraModel c;
  c.fx = j.at("fx").get<double>();
  c.fy = j.at("fy").get<double>();
  c.cx = j.at("cx").get<double>();
  c.cy = j.at("cy").get<double>();
  c.width = j.at("width").get<int>();
  c.height = j.at("height").get<int>();
  const auto twc = j.at("t_wc").get<std::vector<double>>();
  if (twc.size() != 16) throw FileFormatError("camera t_wc must have 16 entries");
  c.t_wc.m = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(twc.data());
  return c;
}

json render_to_json(const RenderConfig& r) {
  return {{"n_samples", r.n_samples},
          {"near", r.near},
          {"far", r.far},
          {"kappa", r.kappa},
          {"background", std::vector<double>{r.background.x(), r.background.y(),
                                             r.background.z()}},
          {"w_rgb", r.w_rgb},
          {"depth_scale", r.depth_scale}};
}

RenderConfig render_from_json(const json& j) {
  RenderConfig r;
  r.n_samples = j.at("n_samples").get<int>();
  r.near = j.at("near").get<double>();
  r.far = j.at("far").get<double>();
  r.kappa = j.at("kappa").get<double>();
  const auto bg = j.at("background").get<std::vector<double>>();
  r.background = Vec3(bg.at(0), bg.at(1), bg.at(2));
  r.w_rgb = j.at("w_rgb").get<double>();
  r.depth_scale = j.at("depth_scale").get<double>();
  return r;
}

std::string frame_stem(size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%03zu", i);
  return buf;
}

}  // namespace

void save_scene(const SyntheticScene& scene, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "frames", ec);
  if (ec) throw IoFailure("cannot create " + dir.string());

  json manifest;
  manifest["version"] = kSceneVersion;
  manifest["seed"] = scene.spec.seed;
  manifest["n_views"] = scene.spec.n_views;
  manifest["trajectory"] = to_string(scene.spec.trajectory);
  manifest["image_size"] = scene.spec.image_size;
  manifest["camera_radius"] = scene.spec.camera_radius;
  manifest["noise"] = {{"depth_sigma", scene.spec.noise.depth_sigma},
                       {"dropout_p", scene.spec.noise.dropout_p},
                       {"mask_erosion", scene.spec.noise.mask_erosion}};
  manifest["decoder"] = {{"kind", scene.spec.decoder.kind},
                         {"blobs", scene.spec.decoder.blobs},
                         {"beta_smooth", scene.spec.decoder.beta_smooth},
                         {"grid_resolution", scene.spec.decoder.grid_resolution},
                         {"grid_extent", scene.spec.decoder.grid_extent}};
  manifest["render"] = render_to_json(scene.spec.render);
  manifest["objects"] = json::array();
  for (const auto& o : scene.objects) manifest["objects"].push_back(object_to_json(o));
  manifest["occluders"] = json::array();
  for (const auto& o : scene.occluders) {
    manifest["occluders"].push_back(object_to_json(o));
  }
  manifest["cameras"] = json::array();
  for (const auto& f : scene.frames) {
    manifest["cameras"].push_back(camera_to_json(f.camera));
  }

  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoFailure("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << "\n";
  if (!out) throw IoFailure("manifest write failed in " + dir.string());

  for (size_t i = 0; i < scene.frames.size(); ++i) {
    const SceneFrame& f = scene.frames[i];
    write_ppm(dir / "frames" / (frame_stem(i) + ".ppm"), f.rgb);
    write_pfm(dir / "frames" / (frame_stem(i) + ".pfm"), f.depth);
    write_pgm(dir / "frames" / (frame_stem(i) + ".pgm"), f.mask_ids);
  }
}

SyntheticScene load_scene(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw IoFailure("cannot open manifest in " + dir.string());
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw FileFormatError("bad scene manifest: " + std::string(e.what()));
  }
  if (manifest.value("version", "") != kSceneVersion) {
    throw ManifestVersionMismatch("expected " + std::string(kSceneVersion) +
                                  ", got " + manifest.value("version", "<none>"));
  }
  SyntheticScene scene;
  try {
    scene.spec.seed = manifest.at("seed").get<uint64_t>();
    scene.spec.n_views = manifest.at("n_views").get<int>();
    scene.spec.trajectory =
        trajectory_from_string(manifest.at("trajectory").get<std::string>());
    scene.spec.image_size = manifest.at("image_size").get<int>();
    scene.spec.camera_radius = manifest.at("camera_radius").get<double>();
    scene.spec.noise.depth_sigma = manifest.at("noise").at("depth_sigma").get<double>();
    scene.spec.noise.dropout_p = manifest.at("noise").at("dropout_p").get<double>();
    scene.spec.noise.mask_erosion = manifest.at("noise").at("mask_erosion").get<int>();
    const auto& jd = manifest.at("decoder");
    scene.spec.decoder.kind = jd.at("kind").get<std::string>();
    scene.spec.decoder.blobs = jd.at("blobs").get<int>();
    scene.spec.decoder.beta_smooth = jd.at("beta_smooth").get<double>();
    scene.spec.decoder.grid_resolution = jd.at("grid_resolution").get<int>();
    scene.spec.decoder.grid_extent = jd.at("grid_extent").get<double>();
    scene.spec.render = render_from_json(manifest.at("render"));
    for (const auto& jo : manifest.at("objects")) {
      scene.objects.push_back(object_from_json(jo));
    }
    scene.spec.n_objects = static_cast<int>(scene.objects.size());
    for (const auto& jo : manifest.at("occluders")) {
      scene.occluders.push_back(object_from_json(jo));
    }
    size_t i = 0;
    for (const auto& jc : manifest.at("cameras")) {
      SceneFrame f;
      f.camera = camera_from_json(jc);
      f.rgb = read_ppm(dir / "frames" / (frame_stem(i) + ".ppm"));
      f.depth = read_pfm(dir / "frames" / (frame_stem(i) + ".pfm"));
      f.mask_ids = read_pgm(dir / "frames" / (frame_stem(i) + ".pgm"));
      scene.frames.push_back(std::move(f));
      ++i;
    }
  } catch (const json::exception& e) {
    throw FileFormatError("bad scene manifest: " + std::string(e.what()));
  }
  return scene;
}

// ---------------------------------------------------------------------------
// Built-in categories

GmmDenoiser make_category_blob_prior(const NoiseSchedule& schedule,
                                     const BlobFieldDecoder& dec) {
  if (dec.n_blobs() != 4) {
    throw ConfigError("builtin blob prior expects a 4-blob decoder");
  }
  struct Proto {
    const char* name;
    std::vector<Vec3> centers;
    std::vector<double> radii;
    std::vector<Vec3> colors;
  };
  // prototypes are deliberately chiral so orientation is identifiable
  const std::vector<Proto> protos = {
      {"cluster",
       {{0.0, 0.0, 0.0}, {0.52, 0.06, 0.16}, {-0.1, 0.48, -0.12}, {-0.36, -0.32, 0.1}},
       {0.5, 0.32, 0.27, 0.24},
       {{0.85, 0.35, 0.25}, {0.9, 0.6, 0.2}, {0.8, 0.45, 0.4}, {0.35, 0.3, 0.6}}},
      {"dumbbell",
       {{-0.52, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.16, 0.34, 0.14}},
       {0.45, 0.27, 0.2, 0.19},
       {{0.25, 0.7, 0.35}, {0.35, 0.8, 0.3}, {0.3, 0.6, 0.45}, {0.75, 0.4, 0.3}}},
      {"tower",
       {{-0.12, 0.0, -0.5}, {0.05, 0.06, -0.05}, {0.26, 0.12, 0.36}, {0.5, 0.2, 0.62}},
       {0.42, 0.32, 0.26, 0.18},
       {{0.3, 0.4, 0.85}, {0.35, 0.5, 0.8}, {0.45, 0.55, 0.75}, {0.85, 0.7, 0.3}}},
  };
  std::vector<CategoryGmm> cats;
  for (const Proto& p : protos) {
    const VecX mean = dec.encode(p.centers, p.radii, p.colors);
    VecX var(mean.size());
    for (int b = 0; b < dec.n_blobs(); ++b) {
      var.segment<3>(7 * b).setConstant(0.001);  // centers: sd ~3 cm
      var[7 * b + 3] = 0.006;                    // radius logit
      var.segment<3>(7 * b + 4).setConstant(0.025);  // color logits
    }
    CategoryGmm cat;
    cat.name = p.name;
    cat.components.push_back({1.0, mean, var});
    cats.push_back(std::move(cat));
  }
  return GmmDenoiser(std::move(cats), schedule);
}

}  // namespace gom
