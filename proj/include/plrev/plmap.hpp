#pragma once

#include <optional>
#include <vector>

#include "plrev/error.hpp"
#include "plrev/rational.hpp"

namespace plrev {

// The circle is R/Z. Every map is handled through its lift; a circle point
// is a coordinate in [0, 1).
struct CirclePoint {
  Rational coord;

  CirclePoint() = default;
  explicit CirclePoint(const Rational& x) : coord(frac(x)) {}

  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

struct Vertex {
  Rational x;
  Rational y;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Closed interval [lo, hi] of the line, lo < hi for nondegenerate intervals.
struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains_open(const Rational& x) const { return lo < x && x < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sign of the one-sided slopes at a point and their quotient.
struct JumpRecord {
  CirclePoint point;
  Rational left_slope;
  Rational right_slope;
  Rational jump;  // left_slope / right_slope

  bool is_break() const { return jump != 1; }
};

// Finite-breakpoint PL homeomorphism of the circle, stored in canonical form:
// vertices of the lift on [0, 1) with x[0] = 0, y[0] in [0, 1), and no
// vertex other than x = 0 whose two adjacent slopes agree. Equality of maps
// is equality of the canonical data.
class PLCircleMap {
 public:
  PLCircleMap();  // identity

  // Canonicalizes arbitrary vertex data. Vertices may lie anywhere on the
  // line; they are reduced modulo the period using the degree.
  static PLCircleMap normalize(int degree, std::vector<Vertex> raw);

  // Accepts only data that is already canonical.
  static PLCircleMap from_canonical(int degree, std::vector<Vertex> vertices);

  static PLCircleMap identity() { return PLCircleMap(); }
  static PLCircleMap rotation(const Rational& angle);
  // x -> c - x (mod 1); reflection(0) is the reflection s.
  static PLCircleMap reflection(const Rational& c = Rational(0));

  int degree() const noexcept { return degree_; }
  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  // Canonical lift: the representative with lift(0) in [0, 1).
  Rational lift(const Rational& x) const;
  Rational lift_inverse(const Rational& y) const;

  // Slope of the lift on the piece starting at vertex i (wrap included).
  const Rational& piece_slope(std::size_t i) const { return slopes_[i]; }
  Rational right_slope(const Rational& x) const;
  Rational left_slope(const Rational& x) const;

  Rational operator()(const Rational& x) const { return frac(lift(x)); }
  Rational inverse_at(const Rational& y) const { return frac(lift_inverse(y)); }

  bool is_identity() const;

  friend bool operator==(const PLCircleMap& a, const PLCircleMap& b) {
    return a.degree_ == b.degree_ && a.vertices_ == b.vertices_;
  }

 private:
  PLCircleMap(int degree, std::vector<Vertex> vertices);
  std::size_t piece_of(const Rational& t) const;  // t in [0, 1)

  int degree_ = 1;
  std::vector<Vertex> vertices_;
  std::vector<Rational> slopes_;
};

// A map of the line commuting with the unit translation: the canonical lift
// of `map` followed by translation by `shift`.
struct LiftMap {
  PLCircleMap map;
  Integer shift = 0;

  int degree() const { return map.degree(); }
  Rational operator()(const Rational& x) const { return map.lift(x) + shift; }
  Rational inverse_at(const Rational& y) const {
    return map.lift_inverse(y - shift);
  }
};

// Finite PL homeomorphism between two intervals of the line. Vertices span
// the domain hull; when `unbounded_below` / `unbounded_above` is set, the
// first / last linear piece is extended to infinity.
class PLIntervalMap {
 public:
  PLIntervalMap(std::vector<Vertex> vertices, bool unbounded_below = false,
                bool unbounded_above = false);

  static PLIntervalMap affine(const Rational& slope, const Rational& offset,
                              const Interval& hull, bool unbounded_below,
                              bool unbounded_above);

  const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  int orientation() const noexcept { return orientation_; }
  bool unbounded_below() const noexcept { return unbounded_below_; }
  bool unbounded_above() const noexcept { return unbounded_above_; }

  // Hull of the vertex x-coordinates and of the y-coordinates.
  Interval hull() const;
  Interval image_hull() const;
  bool in_domain(const Rational& x) const;

  Rational operator()(const Rational& x) const;
  Rational inverse_at(const Rational& y) const;
  Rational right_slope(const Rational& x) const;
  Rational left_slope(const Rational& x) const;

  PLIntervalMap inverse() const;
  PLIntervalMap shifted(const Rational& dx, const Rational& dy) const;

  // True iff the map fixes some point of its open domain.
  bool has_fixed_point() const;

  friend bool operator==(const PLIntervalMap&, const PLIntervalMap&) = default;

 private:
  std::size_t piece_of(const Rational& x) const;
  std::size_t piece_of_value(const Rational& y) const;
  Rational slope(std::size_t piece) const;

  std::vector<Vertex> vertices_;
  bool unbounded_below_ = false;
  bool unbounded_above_ = false;
  int orientation_ = 1;
};

// --- operations -----------------------------------------------------------

PLCircleMap normalize(int degree, std::vector<Vertex> raw);
CirclePoint eval(const PLCircleMap& f, const CirclePoint& x);
JumpRecord slopes_and_jump(const PLCircleMap& f, const CirclePoint& x);
std::vector<JumpRecord> break_points(const PLCircleMap& f);
PLCircleMap compose(const PLCircleMap& f, const PLCircleMap& g);  // f o g
PLCircleMap inverse(const PLCircleMap& f);

LiftMap lift(const PLCircleMap& f);
PLCircleMap project(const LiftMap& f);

// Restriction of f to the open arc (arc.lo, arc.hi) of length at most 1, in
// lift coordinates; the image is expressed through the canonical lift.
PLIntervalMap restrict(const PLCircleMap& f, const Interval& arc);

// Affine homeomorphism of `from` onto `to` with the requested orientation.
PLIntervalMap arc_homeo(const Interval& from, const Interval& to,
                        int orientation);

// Composition of interval maps; g's image must lie in f's domain.
PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g);

// Positive-length anticlockwise arc from a to b (both read mod 1), as a lift
// interval [a', b'] with a' = frac(a) and 0 < b' - a' <= 1 (b' - a' = 1 when
// the points coincide).
Interval ccw_arc(const Rational& a, const Rational& b);

// True iff y lies in the open anticlockwise arc (a, b).
bool in_open_arc(const Rational& a, const Rational& b, const Rational& y);

// Points at which `f` could break: vertex x-coordinates, in [0, 1).
std::vector<Rational> vertex_positions(const PLCircleMap& f);

}  // namespace plrev
