#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mvis/geometry.hpp"
#include "mvis/masks.hpp"

namespace mvis {

/// Pencil of epipolar lines cast by sampled points of one region into
/// another view. `coverage` is the union of the thick-line rasters clipped
/// to the target image; `line_pixels` caches each line's raster so the
/// line-through-region test does not re-rasterize.
struct EpipolarBand {
  int source_node = -1;
  int target_view = -1;
  std::vector<Line2D> lines;
  std::vector<std::vector<std::int32_t>> line_pixels;
  PixelSet coverage;
};

/// Symmetric nonnegative affinity over all instances of a scene. Entries are
/// zero on the diagonal and between nodes of the same view.
struct MatchGraph {
  int n = 0;
  Eigen::MatrixXd W;
  std::vector<int> node_view;  // view id per node, in scene node order

  struct Stats {
    int degenerate_pairs = 0;     // bands lost to all-degenerate sampling
    int epipole_in_image = 0;     // (node, view) pairs with wedge-shaped bands
  } stats;

  int max_instances_per_view() const;
};

struct BandParams {
  int n_samples = 200;
  double thickness = 2.0;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = all cores
};

/// n points drawn uniformly with replacement from the region's pixel
/// centers, deterministic in `seed`. Regions with at most n pixels are
/// enumerated exactly once each instead.
std::vector<Eigen::Vector2d> sample_region_points(const PixelSet& region,
                                                  int n, std::uint64_t seed);

/// Band of `region` (in F.source_view) projected into `target`. Samples
/// that land on the epipole are skipped; throws AllDegenerate if every
/// sample did.
EpipolarBand epipolar_band(const PixelSet& region, const FundamentalMatrix& F,
                           const CameraView& target, int n_samples,
                           double thickness, std::uint64_t seed);

/// Directed band-to-region affinity: the fraction of the region covered by
/// the band times the fraction of band lines whose raster touches the
/// region. Always in [0, 1].
double edge_weight(const EpipolarBand& band, const PixelSet& region);

/// Full match graph: every ordered cross-view pair is scored with
/// edge_weight and the two directions are averaged. Pairs whose band
/// degenerates contribute weight 0.
MatchGraph build_graph(const SceneManifest& scene, const BandParams& params);

/// Centroid baseline: each instance votes weight 1 for the instance in each
/// other view whose mask centroid is nearest to its centroid's epipolar
/// line. After averaging, entries are in {0, 0.5, 1}.
MatchGraph point_baseline_match(const SceneManifest& scene,
                                const BandParams& params);

}  // namespace mvis
