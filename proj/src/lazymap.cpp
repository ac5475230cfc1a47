#include "plrev/lazymap.hpp"

#include <algorithm>

#include "plrev/dynamics.hpp"

namespace plrev {

struct LazyMap::Node {
  Kind kind = Kind::Finite;
  Space space = Space::Line;
  int orientation = 1;
  std::optional<FiniteMap> finite;
  std::vector<LazyMap> children;
  FDData fd;
  std::vector<GluePiece> pieces;
};

namespace {

// Guard against callers handing a map with a fixed point to the orbit
// search; legitimate orbits near accumulation points stay far below this.
constexpr long kMaxOrbitSteps = 1000000;

bool same_value(Space space, const Rational& a, const Rational& b) {
  return space == Space::Circle ? frac(a) == frac(b) : a == b;
}

Rational start_value(const GluePiece& p) {
  return p.orientation > 0 ? p.image.lo : p.image.hi;
}

Rational end_value(const GluePiece& p) {
  return p.orientation > 0 ? p.image.hi : p.image.lo;
}

bool in_fd_domain(const LazyMap::FDData& d, const Rational& x) {
  return (!d.lo || *d.lo < x) && (!d.hi || x < *d.hi);
}

}  // namespace

LazyMap::LazyMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

LazyMap::LazyMap(const PLCircleMap& f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->space = Space::Circle;
  n->orientation = f.degree();
  n->finite = f;
  node_ = std::move(n);
}

LazyMap::LazyMap(const PLIntervalMap& f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->space = Space::Line;
  n->orientation = f.orientation();
  n->finite = f;
  node_ = std::move(n);
}

LazyMap::LazyMap(const LiftMap& f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->space = Space::Line;
  n->orientation = f.degree();
  n->finite = f;
  node_ = std::move(n);
}

LazyMap LazyMap::compose(std::vector<LazyMap> maps) {
  if (maps.empty())
    throw Error(ErrorCode::PreconditionFailed, "empty composition");
  if (maps.size() == 1) return maps.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->space = maps.front().space();
  for (const auto& m : maps) n->orientation *= m.orientation();
  n->children = std::move(maps);
  return LazyMap(std::move(n));
}

LazyMap LazyMap::inverse() const {
  if (kind() == Kind::Inverse) return node_->children.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inverse;
  n->space = space();
  n->orientation = orientation();
  n->children.push_back(*this);
  return LazyMap(std::move(n));
}

LazyMap LazyMap::fd(const LazyMap& v, std::optional<Rational> lo,
                    std::optional<Rational> hi, const Rational& basepoint) {
  FDData d;
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  if (!in_fd_domain(d, basepoint))
    throw Error(ErrorCode::OutOfDomain, "basepoint outside the domain", basepoint);
  if (v.orientation() != 1)
    throw Error(ErrorCode::PreconditionFailed,
                "fundamental-domain coordinate needs an increasing map");
  d.v = std::make_shared<LazyMap>(v);
  d.basepoint = basepoint;
  d.v_basepoint = v(basepoint);
  if (d.v_basepoint == basepoint)
    throw Error(ErrorCode::HasFixedPoint, "basepoint is fixed", basepoint);
  d.direction = d.v_basepoint > basepoint ? 1 : -1;
  auto n = std::make_shared<Node>();
  n->kind = Kind::FD;
  n->space = Space::Line;
  n->orientation = 1;
  n->fd = std::move(d);
  return LazyMap(std::move(n));
}

LazyMap LazyMap::glue(Space space, std::vector<GluePiece> pieces) {
  if (pieces.empty())
    throw Error(ErrorCode::PreconditionFailed, "glue needs at least one piece");
  int orientation = 0;
  for (auto& p : pieces) {
    if (space == Space::Circle) {
      const Integer shift = floor(p.domain.lo);
      p.domain.lo -= shift;
      p.domain.hi -= shift;
      if (p.is_point()) {
        p.value = frac(p.value);
      } else if (shift != 0) {
        // Keep the piece map in the coordinates it was built for.
        const Rational k(shift);
        LazyMap translate(PLIntervalMap({{Rational(0), k}, {Rational(1), k + 1}}, true, true));
        p.map = std::make_shared<LazyMap>(LazyMap::compose({*p.map, translate}));
      }
    }
    if (p.is_point()) {
      if (p.domain.lo != p.domain.hi)
        throw Error(ErrorCode::PreconditionFailed, "point piece with extent");
      continue;
    }
    if (p.domain.length() <= 0 || p.image.length() <= 0)
      throw Error(ErrorCode::DegenerateInterval, "empty glue piece", p.domain.lo);
    if (space == Space::Circle && (p.domain.length() > 1 || p.image.length() > 1))
      throw Error(ErrorCode::NotArcInvariantImage, "arc longer than the circle",
                  p.domain.lo);
    if (orientation == 0) orientation = p.orientation;
    if (p.orientation != orientation)
      throw Error(ErrorCode::PreconditionFailed, "glue pieces disagree on orientation",
                  p.domain.lo);
    // One interior evaluation guards against a wrongly declared image.
    const Rational mid = p.domain.midpoint();
    const Rational y = (*p.map)(mid);
    const bool inside = space == Space::Circle
                            ? in_open_arc(p.image.lo, p.image.hi, y) ||
                                  (p.image.length() == 1 && frac(y) != frac(p.image.lo))
                            : p.image.contains_open(y);
    if (!inside)
      throw Error(ErrorCode::SeamMismatch, "piece map leaves its declared image", mid);
  }
  if (orientation == 0)
    throw Error(ErrorCode::PreconditionFailed, "glue needs an interval piece");
  std::sort(pieces.begin(), pieces.end(), [](const GluePiece& a, const GluePiece& b) {
    if (a.domain.lo != b.domain.lo) return a.domain.lo < b.domain.lo;
    return a.is_point() && !b.is_point();
  });

  std::vector<GluePiece> out;
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GluePiece& p = pieces[i];
    out.push_back(p);
    const bool wrap = i + 1 == n;
    if (wrap && space == Space::Line) break;
    GluePiece q = wrap ? pieces[0] : pieces[i + 1];
    if (wrap) {
      q.domain.lo += 1;
      q.domain.hi += 1;
    }
    const Rational seam = p.domain.hi;
    if (q.domain.lo != seam)
      throw Error(ErrorCode::SeamMismatch, "pieces do not tile the domain", seam);
    if (p.is_point() && q.is_point())
      throw Error(ErrorCode::SeamMismatch, "two point pieces at one seam", seam);
    if (p.is_point()) {
      if (!same_value(space, p.value, start_value(q)))
        throw Error(ErrorCode::SeamMismatch, "value jumps at seam", seam);
    } else if (q.is_point()) {
      if (!same_value(space, end_value(p), q.value))
        throw Error(ErrorCode::SeamMismatch, "value jumps at seam", seam);
    } else {
      if (!same_value(space, end_value(p), start_value(q)))
        throw Error(ErrorCode::SeamMismatch, "value jumps at seam", seam);
      GluePiece pt = point_piece(seam, end_value(p));
      if (wrap && space == Space::Circle) {
        pt.domain = {frac(seam), frac(seam)};
        pt.value = frac(pt.value);
        out.insert(out.begin(), pt);
      } else {
        out.push_back(pt);
      }
    }
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Glue;
  node->space = space;
  node->orientation = orientation;
  node->pieces = std::move(out);
  return LazyMap(std::move(node));
}

Rational LazyMap::operator()(const Rational& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Finite:
      return std::visit([&](const auto& f) { return Rational(f(x)); }, *n.finite);
    case Kind::Compose: {
      Rational r = x;
      for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) r = (*it)(r);
      return r;
    }
    case Kind::Inverse:
      return n.children.front().inverse_at(x);
    case Kind::FD: {
      const FDData& d = n.fd;
      if (!in_fd_domain(d, x))
        throw Error(ErrorCode::OutOfDomain, "point outside coordinate domain", x);
      const Rational& lo = d.direction > 0 ? d.basepoint : d.v_basepoint;
      const Rational& hi = d.direction > 0 ? d.v_basepoint : d.basepoint;
      Rational t = x;
      long steps = 0;
      long k = 0;  // x = v^k(t)
      while (t >= hi) {
        if (d.direction > 0) { t = d.v->inverse_at(t); ++k; }
        else { t = (*d.v)(t); --k; }
        if (++steps > kMaxOrbitSteps)
          throw Error(ErrorCode::HasFixedPoint, "orbit search did not terminate", x);
      }
      while (t < lo) {
        if (d.direction > 0) { t = (*d.v)(t); --k; }
        else { t = d.v->inverse_at(t); ++k; }
        if (++steps > kMaxOrbitSteps)
          throw Error(ErrorCode::HasFixedPoint, "orbit search did not terminate", x);
      }
      const Rational seed = d.direction * (t - d.basepoint) / (d.v_basepoint - d.basepoint);
      return seed + d.direction * k;
    }
    case Kind::Glue: {
      Rational t = x;
      if (n.space == Space::Circle) {
        t = frac(x);
        if (t < n.pieces.front().domain.lo) t += 1;
      }
      for (const auto& p : n.pieces) {
        if (p.is_point()) {
          if (t == p.domain.lo)
            return n.space == Space::Circle ? frac(p.value) : p.value;
        } else if (p.domain.contains_open(t)) {
          Rational y = (*p.map)(t);
          return n.space == Space::Circle ? frac(y) : y;
        }
      }
      throw Error(ErrorCode::OutOfDomain, "point outside glued domain", x);
    }
  }
  throw Error(ErrorCode::PreconditionFailed, "corrupt lazy map");
}

Rational LazyMap::inverse_at(const Rational& y) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Finite:
      return std::visit([&](const auto& f) { return Rational(f.inverse_at(y)); },
                        *n.finite);
    case Kind::Compose: {
      Rational r = y;
      for (const auto& c : n.children) r = c.inverse_at(r);
      return r;
    }
    case Kind::Inverse:
      return n.children.front()(y);
    case Kind::FD: {
      const FDData& d = n.fd;
      Integer k = floor(y);
      if (d.direction < 0) k += 1;
      const Rational s = y - k;
      Rational x = d.basepoint + d.direction * s * (d.v_basepoint - d.basepoint);
      // y = Phi(x') + d * steps with x = v^steps(x').
      const Integer steps = k * d.direction;
      if (abs(steps) > kMaxOrbitSteps)
        throw Error(ErrorCode::OutOfDomain, "coordinate too far out", y);
      const long count = steps.get_si();
      for (long i = 0; i < count; ++i) x = (*d.v)(x);
      for (long i = 0; i > count; --i) x = d.v->inverse_at(x);
      return x;
    }
    case Kind::Glue: {
      const bool circle = n.space == Space::Circle;
      const Rational t = circle ? frac(y) : y;
      for (const auto& p : n.pieces) {
        if (p.is_point()) {
          if (same_value(n.space, p.value, t)) return p.domain.lo;
          continue;
        }
        Rational s = t;
        if (circle) s = p.image.lo + frac(t - p.image.lo);
        if (p.image.contains_open(s)) {
          Rational x = p.map->inverse_at(s);
          return circle ? frac(x) : x;
        }
      }
      throw Error(ErrorCode::OutOfDomain, "value outside glued image", y);
    }
  }
  throw Error(ErrorCode::PreconditionFailed, "corrupt lazy map");
}

LazyMap::Kind LazyMap::kind() const { return node_->kind; }
Space LazyMap::space() const { return node_->space; }
int LazyMap::orientation() const { return node_->orientation; }
const LazyMap::FiniteMap& LazyMap::finite() const { return *node_->finite; }
const std::vector<LazyMap>& LazyMap::children() const { return node_->children; }
const LazyMap::FDData& LazyMap::fd_data() const { return node_->fd; }
const std::vector<GluePiece>& LazyMap::pieces() const { return node_->pieces; }

std::vector<Rational> LazyMap::accumulation_points() const {
  std::vector<Rational> out;
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Finite:
      break;
    case Kind::Compose:
    case Kind::Inverse:
      for (const auto& c : n.children)
        for (auto& p : c.accumulation_points()) out.push_back(p);
      break;
    case Kind::FD:
      if (n.fd.lo) out.push_back(*n.fd.lo);
      if (n.fd.hi) out.push_back(*n.fd.hi);
      break;
    case Kind::Glue:
      for (const auto& p : n.pieces)
        if (!p.is_point() && !p.map->accumulation_points().empty()) {
          out.push_back(n.space == Space::Circle ? frac(p.domain.lo) : p.domain.lo);
          out.push_back(n.space == Space::Circle ? frac(p.domain.hi) : p.domain.hi);
        }
      break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GluePiece point_piece(const Rational& x, const Rational& value) {
  GluePiece p;
  p.domain = {x, x};
  p.value = value;
  return p;
}

GluePiece map_piece(const Interval& domain, const LazyMap& map,
                    const Interval& image, int orientation) {
  GluePiece p;
  p.domain = domain;
  p.map = std::make_shared<LazyMap>(map);
  p.image = image;
  p.orientation = orientation;
  return p;
}

GluePiece finite_piece(const PLIntervalMap& map) {
  return map_piece(map.hull(), LazyMap(map), map.image_hull(), map.orientation());
}

Rational lazy_eval(const LazyMap& m, const Rational& x) { return m(x); }
Rational lazy_inverse(const LazyMap& m, const Rational& y) { return m.inverse_at(y); }

Rational default_basepoint(const PLIntervalMap& v) {
  return (v.vertices()[0].x + v.vertices()[1].x) / 2;
}

LazyMap fd_coordinate(const PLIntervalMap& v, std::optional<Rational> basepoint) {
  if (v.orientation() != 1)
    throw Error(ErrorCode::PreconditionFailed, "map must be increasing");
  if (v.has_fixed_point())
    throw Error(ErrorCode::HasFixedPoint, "map has a fixed point in its domain");
  const Interval hull = v.hull();
  std::optional<Rational> lo, hi;
  if (!v.unbounded_below()) lo = hull.lo;
  if (!v.unbounded_above()) hi = hull.hi;
  return LazyMap::fd(LazyMap(v), lo, hi, basepoint ? *basepoint : default_basepoint(v));
}

LazyMap conjugate_fpf(const PLIntervalMap& u, const PLIntervalMap& v,
                      std::optional<Rational> basepoint_u,
                      std::optional<Rational> basepoint_v) {
  LazyMap phi_u = fd_coordinate(u, basepoint_u);
  LazyMap phi_v = fd_coordinate(v, basepoint_v);
  if (phi_u.fd_data().direction != phi_v.fd_data().direction)
    throw Error(ErrorCode::DirectionMismatch, "maps move points in opposite directions");
  return LazyMap::compose({phi_v.inverse(), phi_u});
}

LazyMap line_reflection(const Rational& c) {
  return LazyMap(PLIntervalMap({{Rational(0), c}, {Rational(1), c - 1}}, true, true));
}

LazyMap reverse_fpf(const LazyMap& phi) {
  return LazyMap::compose({phi.inverse(), line_reflection(0), phi});
}

LazyMap reverse_fpf(const PLIntervalMap& v, std::optional<Rational> basepoint) {
  return reverse_fpf(fd_coordinate(v, basepoint));
}

LiftReversal reverse_lift(const PLCircleMap& f) {
  if (f.degree() != 1)
    throw Error(ErrorCode::WrongDegree, "lift reversal needs a degree +1 map");
  const FixedSet fs = fixed_set(f);
  if (fs.empty()) throw Error(ErrorCode::NoFixedPoint, "map has no fixed point");
  const Rational a = fs.whole_circle ? Rational(0) : fs.components.front().a;
  LiftMap tf{f, 1 - fs.level};
  LazyMap alpha = LazyMap::fd(LazyMap(tf), std::nullopt, std::nullopt, a);
  LazyMap tau = LazyMap::compose({alpha.inverse(), line_reflection(1), alpha});
  return {alpha, tau, tf, a};
}

namespace {

void collect(const LazyMap& m, ProbePoints& out) {
  switch (m.kind()) {
    case LazyMap::Kind::Finite:
      std::visit(
          [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, LiftMap>) {
              for (const auto& v : f.map.vertices()) out.breaks.push_back(v.x);
            } else {
              for (const auto& v : f.vertices()) out.breaks.push_back(v.x);
            }
          },
          m.finite());
      break;
    case LazyMap::Kind::Compose:
    case LazyMap::Kind::Inverse:
      for (const auto& c : m.children()) collect(c, out);
      break;
    case LazyMap::Kind::FD: {
      const auto& d = m.fd_data();
      collect(*d.v, out);
      const Rational lo = std::min(d.basepoint, d.v_basepoint);
      const Rational hi = std::max(d.basepoint, d.v_basepoint);
      for (int j = 0; j < 8; ++j) out.fundamental_domain.push_back(lo + (hi - lo) * j / 8);
      ProbePoints inner;
      collect(*d.v, inner);
      for (const auto& b : inner.breaks)
        if (lo <= b && b < hi) out.fundamental_domain.push_back(b);
      break;
    }
    case LazyMap::Kind::Glue:
      for (const auto& p : m.pieces()) {
        if (p.is_point()) out.seams.push_back(p.domain.lo);
        else collect(*p.map, out);
      }
      break;
  }
}

void tidy(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

ProbePoints probe_points(const LazyMap& m) {
  ProbePoints out;
  collect(m, out);
  tidy(out.breaks);
  tidy(out.seams);
  tidy(out.fundamental_domain);
  return out;
}

}  // namespace plrev
