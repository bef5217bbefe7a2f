#include "mvis/masks.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <string>

#include "mvis/errors.hpp"
#include "mvis/png_io.hpp"

namespace mvis {

using nlohmann::json;

SceneManifest SceneManifest::build(std::vector<CameraView> cameras,
                                   std::vector<InstanceMask> masks) {
  SceneManifest scene;
  std::sort(cameras.begin(), cameras.end(),
            [](const CameraView& a, const CameraView& b) {
              return a.view_id < b.view_id;
            });
  for (const CameraView& cam : cameras) validate_camera(cam);
  for (std::size_t i = 1; i < cameras.size(); ++i)
    if (cameras[i].view_id == cameras[i - 1].view_id)
      throw InvalidCamera("duplicate view_id " +
                          std::to_string(cameras[i].view_id));

  std::sort(masks.begin(), masks.end(),
            [](const InstanceMask& a, const InstanceMask& b) {
              return std::pair(a.view_id, a.instance_index) <
                     std::pair(b.view_id, b.instance_index);
            });

  scene.cameras_ = std::move(cameras);
  for (std::size_t i = 0; i < scene.cameras_.size(); ++i)
    scene.camera_by_view_[scene.cameras_[i].view_id] = i;

  for (std::size_t i = 0; i < masks.size(); ++i) {
    const InstanceMask& m = masks[i];
    auto cam_it = scene.camera_by_view_.find(m.view_id);
    if (cam_it == scene.camera_by_view_.end())
      throw MissingView("mask references unknown view " +
                        std::to_string(m.view_id));
    const CameraView& cam = scene.cameras_[cam_it->second];
    if (m.region.width() != cam.width || m.region.height() != cam.height)
      throw DimensionMismatch("mask size does not match view " +
                              std::to_string(m.view_id));
    if (m.region.empty())
      throw EmptyRegion("empty mask in view " + std::to_string(m.view_id));
    const auto key = std::pair(m.view_id, m.instance_index);
    if (scene.node_by_key_.count(key))
      throw NodeMismatch("duplicate instance " +
                         std::to_string(m.instance_index) + " in view " +
                         std::to_string(m.view_id));
    scene.node_by_key_[key] = static_cast<int>(i);
    scene.nodes_by_view_[m.view_id].push_back(static_cast<int>(i));
  }
  scene.masks_ = std::move(masks);
  return scene;
}

int SceneManifest::node_id(int view_id, int instance_index) const {
  auto it = node_by_key_.find({view_id, instance_index});
  if (it == node_by_key_.end())
    throw NodeMismatch("no node (" + std::to_string(view_id) + ", " +
                       std::to_string(instance_index) + ")");
  return it->second;
}

bool SceneManifest::has_node(int view_id, int instance_index) const {
  return node_by_key_.count({view_id, instance_index}) != 0;
}

const CameraView& SceneManifest::camera(int view_id) const {
  auto it = camera_by_view_.find(view_id);
  if (it == camera_by_view_.end())
    throw MissingView("no camera for view " + std::to_string(view_id));
  return cameras_[it->second];
}

bool SceneManifest::has_camera(int view_id) const {
  return camera_by_view_.count(view_id) != 0;
}

const std::vector<int>& SceneManifest::nodes_in_view(int view_id) const {
  auto it = nodes_by_view_.find(view_id);
  return it == nodes_by_view_.end() ? empty_ : it->second;
}

int SceneManifest::max_instances_per_view() const {
  int best = 0;
  for (const auto& [view, nodes] : nodes_by_view_)
    best = std::max(best, static_cast<int>(nodes.size()));
  return best;
}

ClusterAssignment compact_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  for (int l : labels) remap.emplace(l, 0);
  int next = 0;
  for (auto& [old_id, new_id] : remap) new_id = next++;
  ClusterAssignment out;
  out.labels.reserve(labels.size());
  for (int l : labels) out.labels.push_back(remap.at(l));
  out.k = next;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

json read_json_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw MissingView("no such file: " + path.string());
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("bad JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

void write_json_file(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write: " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

Eigen::Matrix3d matrix_from_row_major(const json& arr, const char* name) {
  if (!arr.is_array() || arr.size() != 9)
    throw IoError(std::string(name) + " must be an array of 9 numbers");
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = arr[3 * r + c].get<double>();
  return m;
}

}  // namespace

std::vector<CameraView> load_cameras(const std::filesystem::path& path) {
  const json j = read_json_file(path);
  if (!j.is_array()) throw IoError("camera file must be a JSON array");
  std::vector<CameraView> cameras;
  cameras.reserve(j.size());
  for (const json& e : j) {
    CameraView cam;
    cam.view_id = e.at("view_id").get<int>();
    cam.width = e.at("width").get<int>();
    cam.height = e.at("height").get<int>();
    cam.K = matrix_from_row_major(e.at("K"), "K");
    cam.R = matrix_from_row_major(e.at("R"), "R");
    const json& t = e.at("t");
    if (!t.is_array() || t.size() != 3)
      throw IoError("t must be an array of 3 numbers");
    cam.t = Eigen::Vector3d(t[0].get<double>(), t[1].get<double>(),
                            t[2].get<double>());
    validate_camera(cam);
    cameras.push_back(cam);
  }
  return cameras;
}

void save_cameras(const std::vector<CameraView>& cameras,
                  const std::filesystem::path& path) {
  json arr = json::array();
  for (const CameraView& cam : cameras) {
    json e;
    e["view_id"] = cam.view_id;
    e["width"] = cam.width;
    e["height"] = cam.height;
    json K = json::array(), R = json::array(), t = json::array();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        K.push_back(cam.K(r, c));
        R.push_back(cam.R(r, c));
      }
    for (int i = 0; i < 3; ++i) t.push_back(cam.t(i));
    e["K"] = K;
    e["R"] = R;
    e["t"] = t;
    arr.push_back(e);
  }
  write_json_file(arr, path);
}

SceneManifest load_scene(const std::filesystem::path& camera_file,
                         const std::filesystem::path& mask_dir) {
  std::vector<CameraView> cameras = load_cameras(camera_file);
  std::vector<InstanceMask> masks;
  for (const CameraView& cam : cameras) {
    const auto label_path =
        mask_dir / ("view_" + std::to_string(cam.view_id) + ".png");
    const GrayImage img = read_gray_png(label_path);
    if (img.width != cam.width || img.height != cam.height)
      throw DimensionMismatch("label image size does not match camera " +
                              std::to_string(cam.view_id));
    std::map<int, PixelSet> regions;
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x) {
        const int label = img.at(x, y);
        if (label == 0) continue;
        auto [it, inserted] =
            regions.try_emplace(label, cam.width, cam.height);
        it->second.insert(x, y);
      }
    for (auto& [label, region] : regions)
      masks.push_back(InstanceMask{cam.view_id, label, std::move(region), {}});
  }
  return SceneManifest::build(std::move(cameras), std::move(masks));
}

void save_scene_masks(const SceneManifest& scene,
                      const std::filesystem::path& mask_dir) {
  std::filesystem::create_directories(mask_dir);
  for (const CameraView& cam : scene.cameras()) {
    GrayImage img;
    img.width = cam.width;
    img.height = cam.height;
    img.bit_depth = 16;
    img.pixels.assign(static_cast<std::size_t>(cam.width) * cam.height, 0);
    const std::vector<int>& nodes = scene.nodes_in_view(cam.view_id);
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
      const InstanceMask& m = scene.node(*it);
      m.region.for_each([&](int x, int y) {
        img.at(x, y) = static_cast<std::uint16_t>(m.instance_index);
      });
    }
    write_gray_png(mask_dir / ("view_" + std::to_string(cam.view_id) + ".png"),
                   img);
  }
}

void save_assignment(const ClusterAssignment& assignment,
                     const SceneManifest& scene,
                     const std::filesystem::path& path) {
  if (static_cast<int>(assignment.labels.size()) != scene.node_count())
    throw NodeMismatch("assignment does not cover the scene's nodes");
  json arr = json::array();
  for (int id = 0; id < scene.node_count(); ++id) {
    const InstanceMask& m = scene.node(id);
    json e;
    e["view_id"] = m.view_id;
    e["instance_index"] = m.instance_index;
    e["cluster_id"] = assignment.labels[id];
    arr.push_back(e);
  }
  write_json_file(arr, path);
}

ClusterAssignment load_assignment(const std::filesystem::path& path,
                                  const SceneManifest& scene) {
  const json j = read_json_file(path);
  if (!j.is_array()) throw IoError("assignment file must be a JSON array");
  if (static_cast<int>(j.size()) != scene.node_count())
    throw NodeMismatch("assignment covers " + std::to_string(j.size()) +
                       " nodes, scene has " +
                       std::to_string(scene.node_count()));
  std::vector<int> labels(scene.node_count(), -1);
  for (const json& e : j) {
    const int id = scene.node_id(e.at("view_id").get<int>(),
                                 e.at("instance_index").get<int>());
    if (labels[id] != -1) throw NodeMismatch("duplicate node in assignment");
    labels[id] = e.at("cluster_id").get<int>();
  }
  ClusterAssignment out = compact_labels(labels);
  return out;
}

ClusterAssignment restrict_assignment(const ClusterAssignment& assignment,
                                      const SceneManifest& from,
                                      const SceneManifest& to) {
  if (static_cast<int>(assignment.labels.size()) != from.node_count())
    throw NodeMismatch("assignment does not cover the source scene");
  std::vector<int> labels;
  labels.reserve(to.node_count());
  for (int id = 0; id < to.node_count(); ++id) {
    const InstanceMask& m = to.node(id);
    labels.push_back(
        assignment.labels[from.node_id(m.view_id, m.instance_index)]);
  }
  return compact_labels(labels);
}

std::vector<Proposal> load_proposals(const std::filesystem::path& dir,
                                     const std::vector<CameraView>& cameras) {
  std::map<int, const CameraView*> cams;
  for (const CameraView& c : cameras) cams[c.view_id] = &c;

  const json j = read_json_file(dir / "proposals.json");
  if (!j.is_array()) throw IoError("proposals.json must be a JSON array");
  std::vector<Proposal> out;
  out.reserve(j.size());
  for (const json& e : j) {
    Proposal p;
    p.view_id = e.at("view_id").get<int>();
    p.score = e.at("score").get<double>();
    auto it = cams.find(p.view_id);
    if (it == cams.end())
      throw MissingView("proposal references unknown view " +
                        std::to_string(p.view_id));
    const GrayImage img = read_gray_png(dir / e.at("file").get<std::string>());
    if (img.width != it->second->width || img.height != it->second->height)
      throw DimensionMismatch("proposal mask size does not match view " +
                              std::to_string(p.view_id));
    p.mask = PixelSet(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
      for (int x = 0; x < img.width; ++x)
        if (img.at(x, y) != 0) p.mask.insert(x, y);
    if (p.mask.empty())
      throw EmptyRegion("empty proposal mask in view " +
                        std::to_string(p.view_id));
    out.push_back(std::move(p));
  }
  return out;
}

void save_proposals(const std::vector<Proposal>& proposals,
                    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  json arr = json::array();
  std::map<int, int> counter;
  for (const Proposal& p : proposals) {
    const int r = counter[p.view_id]++;
    const std::string rel =
        std::to_string(p.view_id) + "/" + std::to_string(r) + ".png";
    std::filesystem::create_directories(dir / std::to_string(p.view_id));
    GrayImage img;
    img.width = p.mask.width();
    img.height = p.mask.height();
    img.bit_depth = 8;
    img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
    p.mask.for_each([&](int x, int y) { img.at(x, y) = 255; });
    write_gray_png(dir / rel, img);
    json e;
    e["view_id"] = p.view_id;
    e["file"] = rel;
    e["score"] = p.score;
    arr.push_back(e);
  }
  write_json_file(arr, dir / "proposals.json");
}

}  // namespace mvis
