#include "mvis/geometry.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "mvis/errors.hpp"

namespace mvis {

void validate_camera(const CameraView& cam) {
  const Eigen::Matrix3d err =
      cam.R.transpose() * cam.R - Eigen::Matrix3d::Identity();
  if (err.cwiseAbs().maxCoeff() >= 1e-9)
    throw InvalidCamera("R is not orthonormal (view " +
                        std::to_string(cam.view_id) + ")");
  const double det = cam.R.determinant();
  if (det < 1.0 - 1e-9 || det > 1.0 + 1e-9)
    throw InvalidCamera("det(R) != 1 (view " + std::to_string(cam.view_id) +
                        ")");
  if (cam.K(1, 0) != 0.0 || cam.K(2, 0) != 0.0 || cam.K(2, 1) != 0.0)
    throw InvalidCamera("K is not upper triangular");
  if (cam.K(2, 2) != 1.0) throw InvalidCamera("K(2,2) must be 1");
  if (cam.K(0, 0) <= 0.0 || cam.K(1, 1) <= 0.0)
    throw InvalidCamera("focal entries must be positive");
  if (cam.width <= 0 || cam.height <= 0)
    throw InvalidCamera("image size must be positive");
}

Eigen::Matrix<double, 3, 4> projection_matrix(const CameraView& cam) {
  Eigen::Matrix<double, 3, 4> Rt;
  Rt.leftCols<3>() = cam.R;
  Rt.col(3) = cam.t;
  return cam.K * Rt;
}

ProjectedPoint project_point(const CameraView& cam, const Eigen::Vector3d& X) {
  const Eigen::Vector3d xc = cam.R * X + cam.t;
  const Eigen::Vector3d pc = cam.K * xc;
  return ProjectedPoint{pc.x() / pc.z(), pc.y() / pc.z(), xc.z()};
}

namespace {

Eigen::Matrix3d cross_matrix(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

}  // namespace

FundamentalMatrix fundamental_from_poses(const CameraView& cam_i,
                                         const CameraView& cam_j) {
  const Eigen::Vector3d ci = cam_i.center();
  const Eigen::Vector3d cj = cam_j.center();
  const double scale = 1.0 + ci.norm() + cj.norm();
  if ((ci - cj).norm() < 1e-9 * scale)
    throw IdenticalPose("camera centers coincide, baseline is zero");

  const Eigen::Matrix3d R_rel = cam_j.R * cam_i.R.transpose();
  const Eigen::Vector3d t_rel = cam_j.t - R_rel * cam_i.t;
  const Eigen::Matrix3d E = cross_matrix(t_rel) * R_rel;
  Eigen::Matrix3d F = cam_j.K.transpose().inverse() * E * cam_i.K.inverse();
  F /= F.norm();  // unit Frobenius; F is defined up to scale anyway
  return FundamentalMatrix{F, cam_i.view_id, cam_j.view_id};
}

Line2D epipolar_line(const FundamentalMatrix& fm, double x, double y) {
  const Eigen::Vector3d l = fm.F * Eigen::Vector3d(x, y, 1.0);
  const double n = std::hypot(l.x(), l.y());
  if (n < 1e-12 * std::max(1.0, std::abs(l.z())))
    throw DegenerateLine("point maps to the null line (epipole)");
  return Line2D{l.x() / n, l.y() / n, l.z() / n};
}

namespace {

// Shared scan for both raster outputs. Rows are narrowed to a candidate
// x-interval, then each candidate pixel center runs the exact distance
// predicate. The interval is widened by one pixel on each side so division
// rounding can never exclude a pixel the predicate would accept.
template <class Emit>
void scan_line_pixels(const Line2D& line, double thickness, int width,
                      int height, Emit&& emit) {
  const double half = thickness / 2.0;
  for (int y = 0; y < height; ++y) {
    const double cy = y + 0.5;
    const double row_term = line.b * cy + line.c;
    int x_begin = 0;
    int x_end = width;  // exclusive
    if (line.a != 0.0) {
      const double t0 = (-half - row_term) / line.a;
      const double t1 = (half - row_term) / line.a;
      const double lo = std::min(t0, t1);
      const double hi = std::max(t0, t1);
      if (std::isfinite(lo) && std::isfinite(hi)) {
        if (hi < -1.0 || lo > width + 1.0) continue;
        x_begin = std::max(0, static_cast<int>(std::floor(lo - 0.5)) - 1);
        x_end = std::min(width, static_cast<int>(std::ceil(hi - 0.5)) + 2);
      }
    } else {
      // horizontal line: the distance is constant along the row
      if (std::abs(row_term) > half) continue;
    }
    for (int x = x_begin; x < x_end; ++x) {
      const double cx = x + 0.5;
      if (std::abs(line.a * cx + line.b * cy + line.c) <= half) emit(x, y);
    }
  }
}

}  // namespace

PixelSet rasterize_line(const Line2D& line, double thickness, int width,
                        int height) {
  PixelSet out(width, height);
  scan_line_pixels(line, thickness, width, height,
                   [&](int x, int y) { out.insert(x, y); });
  return out;
}

std::vector<std::int32_t> rasterize_line_indices(const Line2D& line,
                                                 double thickness, int width,
                                                 int height) {
  std::vector<std::int32_t> out;
  scan_line_pixels(line, thickness, width, height, [&](int x, int y) {
    out.push_back(static_cast<std::int32_t>(y) * width + x);
  });
  return out;
}

}  // namespace mvis
