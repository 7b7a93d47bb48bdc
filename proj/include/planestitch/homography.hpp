#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "planestitch/core.hpp"
#include "planestitch/errors.hpp"

namespace planestitch {

// Non-degenerate 3x3 projective map in canonical scale: the bottom-right
// entry is 1 whenever it is not vanishingly small, otherwise the matrix is
// scaled to unit Frobenius norm with its largest entry positive.
class Homography {
 public:
  Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

  static Homography identity() { return Homography(); }

  static Homography translation(double tx, double ty) {
    return Homography(std::array<double, 9>{1, 0, tx, 0, 1, ty, 0, 0, 1});
  }

  static Homography from_row_major(const std::array<double, 9>& m) {
    return Homography(m);
  }

  double at(int r, int c) const { return m_[r * 3 + c]; }
  const std::array<double, 9>& row_major() const { return m_; }

  // Projective application; the denominator must stay away from zero.
  Vec2 apply(Vec2 p) const {
    const double den = m_[6] * p.x + m_[7] * p.y + m_[8];
    if (std::abs(den) < 1e-12)
      throw PointAtInfinity("homography maps point to infinity");
    return {(m_[0] * p.x + m_[1] * p.y + m_[2]) / den,
            (m_[3] * p.x + m_[4] * p.y + m_[5]) / den};
  }

  double denominator(Vec2 p) const { return m_[6] * p.x + m_[7] * p.y + m_[8]; }

  bool operator==(const Homography& o) const { return m_ == o.m_; }

 private:
  explicit Homography(const std::array<double, 9>& m) : m_(m) {
    canonicalize();
    check_invertible();
  }

  void canonicalize() {
    double fro = 0.0;
    for (double v : m_) fro += v * v;
    fro = std::sqrt(fro);
    if (fro == 0.0) throw DegenerateQuad("zero homography matrix");
    if (std::abs(m_[8]) > 1e-12 * fro) {
      const double s = 1.0 / m_[8];
      for (double& v : m_) v *= s;
      m_[8] = 1.0;
    } else {
      int imax = 0;
      for (int i = 1; i < 9; ++i)
        if (std::abs(m_[i]) > std::abs(m_[imax])) imax = i;
      const double s = (m_[imax] < 0 ? -1.0 : 1.0) / fro;
      for (double& v : m_) v *= s;
    }
  }

  void check_invertible() const {
    const double det =
        m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) -
        m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
        m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
    double fro = 0.0;
    for (double v : m_) fro += v * v;
    const double scale = std::pow(std::sqrt(fro / 3.0), 3);
    if (std::abs(det) < 1e-12 * scale)
      throw DegenerateQuad("singular homography");
  }

  std::array<double, 9> m_;
};

// Per-vertex corner displacements of the w x h frame, fixed vertex order.
struct FourPointOffsets {
  std::array<Vec2, 4> d{};
  double width = 0.0;
  double height = 0.0;
};

// Four per-vertex scalars selecting the virtual plane; clamped to [0,1].
struct DecompositionCoefficients {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  DecompositionCoefficients() = default;
  DecompositionCoefficients(double c1, double c2, double c3, double c4)
      : c{std::clamp(c1, 0.0, 1.0), std::clamp(c2, 0.0, 1.0),
          std::clamp(c3, 0.0, 1.0), std::clamp(c4, 0.0, 1.0)} {}
  explicit DecompositionCoefficients(const std::array<double, 4>& v)
      : DecompositionCoefficients(v[0], v[1], v[2], v[3]) {}

  static DecompositionCoefficients uniform(double t) {
    return DecompositionCoefficients(t, t, t, t);
  }

  bool all_equal(double t) const {
    return c[0] == t && c[1] == t && c[2] == t && c[3] == t;
  }
};

// Dense per-pixel displacement field (m_x, m_y) in pixels.
struct MotionField {
  int w = 0;
  int h = 0;
  std::vector<Vec2> data;

  Vec2 at(int x, int y) const { return data[static_cast<size_t>(y) * w + x]; }
};

namespace detail {

inline Homography matrix_to_homography(const Eigen::Matrix3d& m) {
  std::array<double, 9> a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a[r * 3 + c] = m(r, c);
  return Homography::from_row_major(a);
}

inline Eigen::Matrix3d homography_to_matrix(const Homography& h) {
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = h.at(r, c);
  return m;
}

// Exact 4-correspondence solve: 8x8 linear system with partial pivoting,
// unknowns are the first eight entries of H (H22 = 1).
inline Homography solve_4pt(const std::array<Vec2, 4>& src,
                            const std::array<Vec2, 4>& dst) {
  Eigen::Matrix<double, 8, 8> a = Eigen::Matrix<double, 8, 8>::Zero();
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double x = src[i].x, y = src[i].y;
    const double u = dst[i].x, v = dst[i].y;
    a(2 * i, 0) = x;
    a(2 * i, 1) = y;
    a(2 * i, 2) = 1;
    a(2 * i, 6) = -x * u;
    a(2 * i, 7) = -y * u;
    b(2 * i) = u;
    a(2 * i + 1, 3) = x;
    a(2 * i + 1, 4) = y;
    a(2 * i + 1, 5) = 1;
    a(2 * i + 1, 6) = -x * v;
    a(2 * i + 1, 7) = -y * v;
    b(2 * i + 1) = v;
  }
  Eigen::PartialPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  if (!(lu.rcond() > 1e-12))
    throw DegenerateQuad("singular 4-point system");
  const Eigen::Matrix<double, 8, 1> hv = lu.solve(b);
  Eigen::Matrix3d m;
  m << hv(0), hv(1), hv(2), hv(3), hv(4), hv(5), hv(6), hv(7), 1.0;
  return matrix_to_homography(m);
}

}  // namespace detail

// Least-squares homography through n >= 4 correspondences. Exact solve for
// n == 4; Hartley-normalized DLT with an SVD null vector otherwise.
inline Homography fit_homography_dlt(std::span<const Vec2> src,
                                     std::span<const Vec2> dst) {
  if (src.size() != dst.size() || src.size() < 4)
    throw InsufficientMatches("need at least 4 correspondences");
  const size_t n = src.size();
  if (n == 4) {
    std::array<Vec2, 4> s{src[0], src[1], src[2], src[3]};
    std::array<Vec2, 4> d{dst[0], dst[1], dst[2], dst[3]};
    return detail::solve_4pt(s, d);
  }

  auto normalizer = [](std::span<const Vec2> pts) {
    Vec2 mean{0, 0};
    for (const Vec2& p : pts) mean += p;
    mean = mean * (1.0 / static_cast<double>(pts.size()));
    double avg = 0.0;
    for (const Vec2& p : pts) avg += norm(p - mean);
    avg /= static_cast<double>(pts.size());
    const double s = avg > 1e-12 ? std::sqrt(2.0) / avg : 1.0;
    Eigen::Matrix3d t;
    t << s, 0, -s * mean.x, 0, s, -s * mean.y, 0, 0, 1;
    return t;
  };

  const Eigen::Matrix3d ts = normalizer(src);
  const Eigen::Matrix3d td = normalizer(dst);

  Eigen::MatrixXd a(2 * n, 9);
  for (size_t i = 0; i < n; ++i) {
    const double x = ts(0, 0) * src[i].x + ts(0, 2);
    const double y = ts(1, 1) * src[i].y + ts(1, 2);
    const double u = td(0, 0) * dst[i].x + td(0, 2);
    const double v = td(1, 1) * dst[i].y + td(1, 2);
    a.row(2 * i) << x, y, 1, 0, 0, 0, -x * u, -y * u, -u;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -x * v, -y * v, -v;
  }
  const Eigen::Matrix<double, 9, 9> ata = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 9, 9>> eig(ata);
  const Eigen::Matrix<double, 9, 1> hv = eig.eigenvectors().col(0);
  Eigen::Matrix3d hn;
  hn << hv(0), hv(1), hv(2), hv(3), hv(4), hv(5), hv(6), hv(7), hv(8);
  return detail::matrix_to_homography(td.inverse() * hn * ts);
}

// H with H * corner_i == corner_i + offset_i for all four frame corners.
inline Homography offsets_to_homography(const FourPointOffsets& off) {
  const Quad src = frame_corners(off.width, off.height);
  std::array<Vec2, 4> dst;
  for (int i = 0; i < 4; ++i) dst[i] = src[i] + off.d[i];
  return detail::solve_4pt(src, dst);
}

// Corner displacements of h over the w x h frame. The displaced quad must be
// simple with positive area.
inline FourPointOffsets homography_to_offsets(const Homography& h, double w,
                                              double h_px) {
  const Quad src = frame_corners(w, h_px);
  Quad dst;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(h.denominator(src[i])) < 1e-8)
      throw PointAtInfinity("frame corner maps to infinity");
    dst[i] = h.apply(src[i]);
  }
  if (!quad_is_valid(dst))
    throw DegenerateQuad("displaced corner quad is degenerate");
  FourPointOffsets off;
  off.width = w;
  off.height = h_px;
  for (int i = 0; i < 4; ++i) off.d[i] = dst[i] - src[i];
  return off;
}

inline Homography invert(const Homography& h) {
  const Eigen::Matrix3d m = detail::homography_to_matrix(h);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(m);
  if (!lu.isInvertible()) throw DegenerateQuad("singular homography");
  return detail::matrix_to_homography(Eigen::Matrix3d(lu.inverse()));
}

// compose(a, b) applies b first: compose(a, b) * x == a * (b * x).
inline Homography compose(const Homography& a, const Homography& b) {
  return detail::matrix_to_homography(detail::homography_to_matrix(a) *
                                      detail::homography_to_matrix(b));
}

// Splits h into the target-side plane warp h_tgt (scaled corner offsets) and
// h_ref = invert(h) o h_tgt, so that compose(h_tgt, invert(h_ref)) == h.
// The endpoints are returned without re-solving so they are exact.
inline std::pair<Homography, Homography> decompose(
    const Homography& h, const DecompositionCoefficients& c, double w,
    double h_px) {
  if (c.all_equal(0.0)) return {invert(h), Homography::identity()};
  if (c.all_equal(1.0)) return {Homography::identity(), h};

  const FourPointOffsets off = homography_to_offsets(h, w, h_px);
  FourPointOffsets scaled;
  scaled.width = w;
  scaled.height = h_px;
  for (int i = 0; i < 4; ++i) scaled.d[i] = c.c[i] * off.d[i];
  const Quad src = frame_corners(w, h_px);
  Quad dst;
  for (int i = 0; i < 4; ++i) dst[i] = src[i] + scaled.d[i];
  if (!quad_is_valid(dst)) throw DegenerateQuad("scaled corner quad collapsed");
  const Homography h_tgt = offsets_to_homography(scaled);
  const Homography h_ref = compose(invert(h), h_tgt);
  return {h_ref, h_tgt};
}

// Warp that places reference-image content on the virtual plane selected by
// h_tgt: it satisfies reference_side_warp(h, h_tgt) * (h * x) == h_tgt * x,
// so both warped views coincide wherever h aligns them.
inline Homography reference_side_warp(const Homography& h,
                                      const Homography& h_tgt) {
  return compose(h_tgt, invert(h));
}

// Pixel-wise motion embedding of h over the w x h grid.
inline MotionField motion_field(const Homography& h, int w, int h_px) {
  MotionField f;
  f.w = w;
  f.h = h_px;
  f.data.resize(static_cast<size_t>(w) * h_px);
  for (int y = 0; y < h_px; ++y) {
    for (int x = 0; x < w; ++x) {
      const double den = h.denominator({double(x), double(y)});
      if (!(den > 1e-8))
        throw PointAtInfinity("motion field denominator underflow");
      const double mx =
          (h.at(0, 0) * x + h.at(0, 1) * y + h.at(0, 2)) / den - x;
      const double my =
          (h.at(1, 0) * x + h.at(1, 1) * y + h.at(1, 2)) / den - y;
      f.data[static_cast<size_t>(y) * w + x] = {mx, my};
    }
  }
  return f;
}

// Frame corners mapped through h, fixed vertex order.
inline Quad warp_quad(const Homography& h, double w, double h_px) {
  const Quad src = frame_corners(w, h_px);
  Quad out;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(h.denominator(src[i])) < 1e-12)
      throw PointAtInfinity("corner maps to infinity");
    out[i] = h.apply(src[i]);
  }
  return out;
}

}  // namespace planestitch
