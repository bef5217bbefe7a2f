#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mvis/geometry.hpp"
#include "mvis/pixel_set.hpp"

namespace mvis {

/// One segmented instance in one view. `instance_index` is the label value
/// in the view's label image (unique within the view, >= 1 for loaded
/// scenes). `score` is only meaningful for detector proposals.
struct InstanceMask {
  int view_id = 0;
  int instance_index = 0;
  PixelSet region;
  std::optional<double> score;
};

/// A whole multi-view scene: cameras plus per-view instance masks, with a
/// dense node indexing. Node ids enumerate masks sorted by
/// (view_id, instance_index); the mapping is stable and bijective.
class SceneManifest {
 public:
  SceneManifest() = default;

  /// Sorts, validates, and indexes. Throws MissingView if a mask references
  /// an unknown view, EmptyRegion / DimensionMismatch on bad masks.
  static SceneManifest build(std::vector<CameraView> cameras,
                             std::vector<InstanceMask> masks);

  const std::vector<CameraView>& cameras() const { return cameras_; }
  const std::vector<InstanceMask>& masks() const { return masks_; }

  int node_count() const { return static_cast<int>(masks_.size()); }
  const InstanceMask& node(int id) const { return masks_.at(id); }

  /// Throws NodeMismatch if the key is absent.
  int node_id(int view_id, int instance_index) const;
  bool has_node(int view_id, int instance_index) const;

  /// Throws MissingView if the view is absent.
  const CameraView& camera(int view_id) const;
  bool has_camera(int view_id) const;

  /// Node ids belonging to one view, ascending.
  const std::vector<int>& nodes_in_view(int view_id) const;

  int max_instances_per_view() const;

 private:
  std::vector<CameraView> cameras_;
  std::vector<InstanceMask> masks_;
  std::map<int, std::size_t> camera_by_view_;
  std::map<std::pair<int, int>, int> node_by_key_;
  std::map<int, std::vector<int>> nodes_by_view_;
  std::vector<int> empty_;
};

/// Node id -> cluster id in [0, k). Final assignments have contiguous
/// cluster ids with no empty clusters.
struct ClusterAssignment {
  std::vector<int> labels;
  int k = 0;
};

/// Drops empty clusters and renumbers the rest contiguously, preserving the
/// relative order of the surviving ids.
ClusterAssignment compact_labels(const std::vector<int>& labels);

// ---------------------------------------------------------------------------
// file formats

/// Camera file: JSON array of {view_id, width, height, K: [9 row-major],
/// R: [9], t: [3]}.
std::vector<CameraView> load_cameras(const std::filesystem::path& path);
void save_cameras(const std::vector<CameraView>& cameras,
                  const std::filesystem::path& path);

/// Loads cameras plus one 16-bit label PNG `view_<id>.png` per view from
/// `mask_dir`. Label value 0 is background; value m >= 1 becomes the mask
/// with instance_index m. A view whose label image is all zeros contributes
/// no nodes.
SceneManifest load_scene(const std::filesystem::path& camera_file,
                         const std::filesystem::path& mask_dir);

/// Writes `view_<id>.png` label images for every camera in the scene.
/// Overlapping masks are painted in descending instance order so the lowest
/// instance index wins contested pixels.
void save_scene_masks(const SceneManifest& scene,
                      const std::filesystem::path& mask_dir);

/// Assignment file: JSON array of {view_id, instance_index, cluster_id},
/// sorted by node id.
void save_assignment(const ClusterAssignment& assignment,
                     const SceneManifest& scene,
                     const std::filesystem::path& path);

/// Throws NodeMismatch unless the file covers exactly the scene's nodes.
ClusterAssignment load_assignment(const std::filesystem::path& path,
                                  const SceneManifest& scene);

/// Carries an estimated/ground-truth assignment from one scene to a scene
/// whose nodes are a subset keyed by (view_id, instance_index). Labels are
/// compacted. Throws NodeMismatch if `to` has a node `from` lacks.
ClusterAssignment restrict_assignment(const ClusterAssignment& assignment,
                                      const SceneManifest& from,
                                      const SceneManifest& to);

/// Region proposal: a candidate mask with a detector confidence. cluster_id
/// is filled during refinement.
struct Proposal {
  int view_id = 0;
  PixelSet mask;
  double score = 0.0;
  std::optional<int> cluster_id;
};

/// Proposals directory: `proposals.json` is an array of
/// {view_id, file, score}; each `file` is an 8-bit PNG mask (nonzero =
/// inside) relative to the directory.
std::vector<Proposal> load_proposals(const std::filesystem::path& dir,
                                     const std::vector<CameraView>& cameras);
void save_proposals(const std::vector<Proposal>& proposals,
                    const std::filesystem::path& dir);

}  // namespace mvis
