#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mvis/pixel_set.hpp"

namespace mvis {

/// Calibrated pinhole view: world->camera pose (R, t) plus intrinsics K.
/// A world point X maps to K * (R * X + t) followed by perspective division.
struct CameraView {
  int view_id = 0;
  Eigen::Matrix3d K = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();
  int width = 0;
  int height = 0;

  Eigen::Vector3d center() const { return -R.transpose() * t; }
};

/// Throws InvalidCamera unless R is orthonormal with det 1, K is upper
/// triangular with positive focal entries and K(2,2) == 1, and the image
/// size is positive.
void validate_camera(const CameraView& cam);

/// 2D line a*x + b*y + c = 0, normalized so a^2 + b^2 = 1; |a*x + b*y + c|
/// is then the point-line distance in pixels.
struct Line2D {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double signed_distance(double x, double y) const { return a * x + b * y + c; }
};

/// Maps homogeneous pixels of `source_view` to epipolar lines in
/// `target_view`. Stored scaled to unit Frobenius norm; rank 2 by
/// construction from poses.
struct FundamentalMatrix {
  Eigen::Matrix3d F = Eigen::Matrix3d::Zero();
  int source_view = -1;
  int target_view = -1;
};

/// P = K * [R | t].
Eigen::Matrix<double, 3, 4> projection_matrix(const CameraView& cam);

/// Pixel coordinates plus depth (z in the camera frame, positive in front).
struct ProjectedPoint {
  double x = 0.0;
  double y = 0.0;
  double depth = 0.0;
};

ProjectedPoint project_point(const CameraView& cam, const Eigen::Vector3d& X);

/// F = K_j^-T [t_rel]_x R_rel K_i^-1 from the two known poses.
/// Throws IdenticalPose when the camera centers coincide.
FundamentalMatrix fundamental_from_poses(const CameraView& cam_i,
                                         const CameraView& cam_j);

/// l = F * (x, y, 1)^T renormalized to a^2 + b^2 = 1. Throws DegenerateLine
/// when (a, b) vanishes (p at the epipole); callers skip that sample.
Line2D epipolar_line(const FundamentalMatrix& F, double x, double y);

/// Pixels whose center (x+0.5, y+0.5) lies within thickness/2 of the line.
/// Deterministic, no anti-aliasing; a line missing the image yields an
/// empty set.
PixelSet rasterize_line(const Line2D& line, double thickness, int width,
                        int height);

/// Same coverage as rasterize_line but emitted as flat indices y*width + x,
/// in row-major order. Both paths use the identical distance predicate, so
/// the sets agree bit for bit.
std::vector<std::int32_t> rasterize_line_indices(const Line2D& line,
                                                 double thickness, int width,
                                                 int height);

}  // namespace mvis
