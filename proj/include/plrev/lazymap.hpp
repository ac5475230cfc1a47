#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "plrev/plmap.hpp"

namespace plrev {

// Lift-coordinate maps of the line, or maps of the circle whose values are
// reduced mod 1.
enum class Space { Line, Circle };

class LazyMap;

struct GluePiece {
  Interval domain;  // lo == hi for a single point
  std::shared_ptr<const LazyMap> map;  // null for points
  Rational value;   // points only
  Interval image;   // intervals only: open image in lift coordinates
  int orientation = 1;

  bool is_point() const { return map == nullptr; }
};

// Expression-represented PL homeomorphism. Values are immutable and cheap to
// copy. Break points may accumulate at the endpoints of fundamental-domain
// coordinate domains; every evaluation terminates and is exact.
class LazyMap {
 public:
  enum class Kind { Finite, Compose, Inverse, FD, Glue };
  using FiniteMap = std::variant<PLIntervalMap, PLCircleMap, LiftMap>;

  struct FDData {
    std::shared_ptr<const LazyMap> v;  // increasing, fixed-point-free
    std::optional<Rational> lo;        // open domain; nullopt is infinite
    std::optional<Rational> hi;
    Rational basepoint;
    Rational v_basepoint;
    int direction = 1;  // sign of v(x) - x
  };

  LazyMap(const PLCircleMap& f);
  LazyMap(const PLIntervalMap& f);
  LazyMap(const LiftMap& f);

  static LazyMap compose(std::vector<LazyMap> maps);  // maps[0] applied last
  static LazyMap fd(const LazyMap& v, std::optional<Rational> lo,
                    std::optional<Rational> hi, const Rational& basepoint);
  // Pieces must tile the domain (the circle, or an interval of the line);
  // both-sided limits are checked at every seam.
  static LazyMap glue(Space space, std::vector<GluePiece> pieces);

  LazyMap inverse() const;

  Rational operator()(const Rational& x) const;
  Rational inverse_at(const Rational& y) const;

  Kind kind() const;
  Space space() const;
  int orientation() const;
  bool is_finite() const { return kind() == Kind::Finite; }

  const FiniteMap& finite() const;
  const std::vector<LazyMap>& children() const;  // Compose, Inverse
  const FDData& fd_data() const;
  const std::vector<GluePiece>& pieces() const;

  // Endpoints of fundamental-domain coordinate domains, in the coordinates
  // of the node that owns them, and glue seams next to such pieces.
  std::vector<Rational> accumulation_points() const;

 private:
  struct Node;
  explicit LazyMap(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

GluePiece point_piece(const Rational& x, const Rational& value);
GluePiece map_piece(const Interval& domain, const LazyMap& map,
                    const Interval& image, int orientation);
// Image and orientation read from the vertex data.
GluePiece finite_piece(const PLIntervalMap& map);

// Evaluation wrappers.
Rational lazy_eval(const LazyMap& m, const Rational& x);
Rational lazy_inverse(const LazyMap& m, const Rational& y);

// Phi with Phi(v(x)) = Phi(x) + d, d the displacement sign of v; the seed
// is the affine map of the fundamental domain between basepoint and
// v(basepoint) onto [0, 1) (d = +1) or [-1, 0) (d = -1).
LazyMap fd_coordinate(const PLIntervalMap& v,
                      std::optional<Rational> basepoint = std::nullopt);
Rational default_basepoint(const PLIntervalMap& v);

// theta = Phi_v^-1 o Phi_u, so theta o u = v o theta.
LazyMap conjugate_fpf(const PLIntervalMap& u, const PLIntervalMap& v,
                      std::optional<Rational> basepoint_u = std::nullopt,
                      std::optional<Rational> basepoint_v = std::nullopt);

// Orientation-reversing involution alpha with alpha v alpha = v^-1.
LazyMap reverse_fpf(const PLIntervalMap& v,
                    std::optional<Rational> basepoint = std::nullopt);
LazyMap reverse_fpf(const LazyMap& fd_coordinate_of_v);

struct LiftReversal {
  LazyMap alpha;   // alpha (T f~) alpha^-1 = T
  LazyMap tau;     // alpha^-1 i alpha, i(x) = 1 - x
  LiftMap tf;      // T f~ with the lift chosen so that f~(a) = a
  Rational fixed;  // a
};
LiftReversal reverse_lift(const PLCircleMap& f);

// x -> c - x on the whole line.
LazyMap line_reflection(const Rational& c);

struct ProbePoints {
  std::vector<Rational> breaks;
  std::vector<Rational> seams;
  std::vector<Rational> fundamental_domain;
};
ProbePoints probe_points(const LazyMap& m);

}  // namespace plrev
