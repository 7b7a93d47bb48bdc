#pragma once

#include <array>
#include <cmath>

namespace planestitch {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }

// Vertex order used everywhere: p1 top-left, p2 top-right, p3 bottom-left,
// p4 bottom-right. Diagonals are p1-p4 and p2-p3.
using Quad = std::array<Vec2, 4>;

// Corners of the w x h image rectangle in the fixed vertex order.
inline Quad frame_corners(double w, double h) {
  return Quad{Vec2{0.0, 0.0}, Vec2{w, 0.0}, Vec2{0.0, h}, Vec2{w, h}};
}

// Shoelace area of the polygon p1 -> p2 -> p4 -> p3; positive for the
// identity rectangle in image (y-down) coordinates.
inline double signed_area(const Quad& q) {
  const Vec2 a = q[0], b = q[1], c = q[3], d = q[2];
  return 0.5 * (cross(a, b) + cross(b, c) + cross(c, d) + cross(d, a));
}

inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// A quad is usable when its boundary cycle p1->p2->p4->p3 is simple and
// encloses positive area.
inline bool quad_is_valid(const Quad& q) {
  if (!(signed_area(q) > 0.0)) return false;
  if (segments_intersect(q[0], q[1], q[3], q[2])) return false;  // top vs bottom
  if (segments_intersect(q[1], q[3], q[2], q[0])) return false;  // right vs left
  return true;
}

}  // namespace planestitch
