#include "mvis/matching.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "mvis/errors.hpp"
#include "mvis/parallel.hpp"
#include "mvis/random.hpp"

namespace mvis {

int MatchGraph::max_instances_per_view() const {
  std::map<int, int> counts;
  for (int v : node_view) counts[v]++;
  int best = 0;
  for (const auto& [view, c] : counts) best = std::max(best, c);
  return best;
}

std::vector<Eigen::Vector2d> sample_region_points(const PixelSet& region,
                                                  int n, std::uint64_t seed) {
  if (region.empty()) throw EmptyRegion("cannot sample an empty region");
  if (n < 1) throw EmptyRegion("sample count must be >= 1");

  const auto pixels = region.pixels();
  std::vector<Eigen::Vector2d> points;
  if (static_cast<int>(pixels.size()) <= n) {
    points.reserve(pixels.size());
    for (const auto& [x, y] : pixels)
      points.emplace_back(x + 0.5, y + 0.5);
    return points;
  }
  CounterRng rng(seed);
  points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto& [x, y] = pixels[rng.next_below(pixels.size())];
    points.emplace_back(x + 0.5, y + 0.5);
  }
  return points;
}

EpipolarBand epipolar_band(const PixelSet& region, const FundamentalMatrix& F,
                           const CameraView& target, int n_samples,
                           double thickness, std::uint64_t seed) {
  if (target.view_id != F.target_view)
    throw DimensionMismatch("target camera does not match F.target_view");

  EpipolarBand band;
  band.target_view = target.view_id;
  band.coverage = PixelSet(target.width, target.height);

  const auto points = sample_region_points(region, n_samples, seed);
  for (const Eigen::Vector2d& p : points) {
    Line2D line;
    try {
      line = epipolar_line(F, p.x(), p.y());
    } catch (const DegenerateLine&) {
      continue;
    }
    auto raster =
        rasterize_line_indices(line, thickness, target.width, target.height);
    for (std::int32_t idx : raster)
      band.coverage.insert(idx % target.width, idx / target.width);
    band.lines.push_back(line);
    band.line_pixels.push_back(std::move(raster));
  }
  if (band.lines.empty())
    throw AllDegenerate("every sampled point hit the epipole");
  return band;
}

double edge_weight(const EpipolarBand& band, const PixelSet& region) {
  if (band.lines.empty())
    throw AllDegenerate("band has no lines");
  if (region.empty()) throw EmptyRegion("edge_weight target region is empty");

  const std::size_t area_inter = band.coverage.intersection_count(region);
  const double area_frac =
      static_cast<double>(area_inter) / static_cast<double>(region.count());

  std::size_t lines_through = 0;
  for (const auto& raster : band.line_pixels) {
    for (std::int32_t idx : raster) {
      if (region.contains_index(static_cast<std::size_t>(idx))) {
        ++lines_through;
        break;
      }
    }
  }
  const double line_frac = static_cast<double>(lines_through) /
                           static_cast<double>(band.lines.size());
  return area_frac * line_frac;
}

namespace {

// F for every ordered view pair; IdenticalPose is impossible for a valid
// multi-camera scene but would surface here.
std::map<std::pair<int, int>, FundamentalMatrix> all_fundamentals(
    const SceneManifest& scene) {
  std::map<std::pair<int, int>, FundamentalMatrix> out;
  for (const CameraView& a : scene.cameras())
    for (const CameraView& b : scene.cameras())
      if (a.view_id != b.view_id)
        out.emplace(std::pair(a.view_id, b.view_id),
                    fundamental_from_poses(a, b));
  return out;
}

bool epipole_inside_image(const CameraView& source, const CameraView& target) {
  const ProjectedPoint e = project_point(target, source.center());
  return e.depth > 0 && e.x >= 0 && e.x < target.width && e.y >= 0 &&
         e.y < target.height;
}

void check_graph_invariants(const MatchGraph& g) {
  for (int a = 0; a < g.n; ++a) {
    if (g.W(a, a) != 0.0)
      throw AsymmetricInput("nonzero diagonal in match graph");
    for (int b = a + 1; b < g.n; ++b) {
      if (g.W(a, b) != g.W(b, a))
        throw AsymmetricInput("match graph is not symmetric");
      if (g.W(a, b) < 0.0 || g.W(a, b) > 1.0)
        throw AsymmetricInput("match weight outside [0,1]");
      if (g.node_view[a] == g.node_view[b] && g.W(a, b) != 0.0)
        throw AsymmetricInput("nonzero intra-view weight");
    }
  }
}

}  // namespace

MatchGraph build_graph(const SceneManifest& scene, const BandParams& params) {
  const int n = scene.node_count();
  MatchGraph graph;
  graph.n = n;
  graph.W = Eigen::MatrixXd::Zero(n, n);
  graph.node_view.reserve(n);
  for (int id = 0; id < n; ++id)
    graph.node_view.push_back(scene.node(id).view_id);
  if (n == 0) return graph;

  const auto fundamentals = all_fundamentals(scene);

  // one task per (source node, target view); each writes a disjoint slice
  // of the directed weight matrix, so the result is schedule-independent
  struct Task {
    int node;
    int target_view;
  };
  std::vector<Task> tasks;
  for (int id = 0; id < n; ++id)
    for (const CameraView& cam : scene.cameras())
      if (cam.view_id != scene.node(id).view_id &&
          !scene.nodes_in_view(cam.view_id).empty())
        tasks.push_back({id, cam.view_id});

  Eigen::MatrixXd directed = Eigen::MatrixXd::Zero(n, n);
  std::atomic<int> degenerate{0};
  std::atomic<int> wedges{0};

  parallel_for(tasks.size(), params.threads, [&](std::size_t ti) {
    const Task& task = tasks[ti];
    const InstanceMask& src = scene.node(task.node);
    const FundamentalMatrix& F =
        fundamentals.at({src.view_id, task.target_view});
    const CameraView& target = scene.camera(task.target_view);
    if (epipole_inside_image(scene.camera(src.view_id), target))
      wedges.fetch_add(1, std::memory_order_relaxed);

    EpipolarBand band;
    try {
      band = epipolar_band(
          src.region, F, target, params.n_samples, params.thickness,
          derive_seed(params.seed, 0xb4nd_u64(), task.node, task.target_view));
    } catch (const AllDegenerate&) {
      degenerate.fetch_add(1, std::memory_order_relaxed);
      return;  // row slice stays zero
    }
    for (int b : scene.nodes_in_view(task.target_view))
      directed(task.node, b) = edge_weight(band, scene.node(b).region);
  });

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || graph.node_view[a] == graph.node_view[b]) continue;
      graph.W(a, b) = 0.5 * (directed(a, b) + directed(b, a));
    }
  graph.stats.degenerate_pairs = degenerate.load();
  graph.stats.epipole_in_image = wedges.load();
  check_graph_invariants(graph);
  return graph;
}

MatchGraph point_baseline_match(const SceneManifest& scene,
                                const BandParams& params) {
  const int n = scene.node_count();
  MatchGraph graph;
  graph.n = n;
  graph.W = Eigen::MatrixXd::Zero(n, n);
  graph.node_view.reserve(n);
  for (int id = 0; id < n; ++id)
    graph.node_view.push_back(scene.node(id).view_id);
  if (n == 0) return graph;

  const auto fundamentals = all_fundamentals(scene);

  std::vector<Eigen::Vector2d> centroids(n);
  for (int id = 0; id < n; ++id) {
    double sx = 0, sy = 0;
    const PixelSet& region = scene.node(id).region;
    region.for_each([&](int x, int y) {
      sx += x + 0.5;
      sy += y + 0.5;
    });
    const double m = static_cast<double>(region.count());
    centroids[id] = Eigen::Vector2d(sx / m, sy / m);
  }

  Eigen::MatrixXd directed = Eigen::MatrixXd::Zero(n, n);
  std::atomic<int> degenerate{0};
  parallel_for(static_cast<std::size_t>(n), params.threads, [&](std::size_t a) {
    const int view_a = graph.node_view[a];
    for (const CameraView& cam : scene.cameras()) {
      if (cam.view_id == view_a) continue;
      const std::vector<int>& candidates = scene.nodes_in_view(cam.view_id);
      if (candidates.empty()) continue;
      Line2D line;
      try {
        line = epipolar_line(fundamentals.at({view_a, cam.view_id}),
                             centroids[a].x(), centroids[a].y());
      } catch (const DegenerateLine&) {
        degenerate.fetch_add(1, std::memory_order_relaxed);
        continue;
      }
      int best = -1;
      double best_dist = 0;
      for (int b : candidates) {
        const double d =
            std::abs(line.signed_distance(centroids[b].x(), centroids[b].y()));
        if (best < 0 || d < best_dist) {
          best = b;
          best_dist = d;
        }
      }
      directed(a, best) = 1.0;
    }
  });

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b || graph.node_view[a] == graph.node_view[b]) continue;
      graph.W(a, b) = 0.5 * (directed(a, b) + directed(b, a));
    }
  graph.stats.degenerate_pairs = degenerate.load();
  check_graph_invariants(graph);
  return graph;
}

}  // namespace mvis
