#include "plrev/plmap.hpp"

#include <algorithm>

namespace plrev {

namespace {

Rational segment_slope(const Vertex& a, const Vertex& b) {
  return (b.y - a.y) / (b.x - a.x);
}

void require_degree(int degree) {
  if (degree != 1 && degree != -1)
    throw Error(ErrorCode::PreconditionFailed, "degree must be +1 or -1");
}

}  // namespace

// --- PLCircleMap ----------------------------------------------------------

PLCircleMap::PLCircleMap() : PLCircleMap(1, {{Rational(0), Rational(0)}}) {}

PLCircleMap::PLCircleMap(int degree, std::vector<Vertex> vertices)
    : degree_(degree), vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  slopes_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vertex next = i + 1 < n ? vertices_[i + 1]
                            : Vertex{vertices_[0].x + 1,
                                     vertices_[0].y + degree_};
    slopes_.push_back(segment_slope(vertices_[i], next));
  }
}

PLCircleMap PLCircleMap::normalize(int degree, std::vector<Vertex> raw) {
  require_degree(degree);
  if (raw.empty())
    throw Error(ErrorCode::PreconditionFailed, "a map needs at least one vertex");

  for (auto& v : raw) {
    Integer k = floor(v.x);
    v.x -= k;
    v.y -= Rational(k * degree);
  }
  std::sort(raw.begin(), raw.end(),
            [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < raw.size(); ++i)
    if (raw[i].x == raw[i - 1].x)
      throw Error(ErrorCode::DuplicateX, "two vertices share x", raw[i].x);

  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Rational next_y = i + 1 < n ? raw[i + 1].y : raw[0].y + degree;
    if (sgn(next_y - raw[i].y) != degree)
      throw Error(ErrorCode::NonMonotone,
                  "vertex values are not monotone for the degree", raw[i].x);
  }

  if (raw.front().x != 0) {
    const Vertex before{raw.back().x - 1, raw.back().y - degree};
    const Vertex& after = raw.front();
    Rational y0 = before.y + segment_slope(before, after) * (0 - before.x);
    raw.insert(raw.begin(), Vertex{Rational(0), y0});
  }

  const Integer shift = floor(raw.front().y);
  for (auto& v : raw) v.y -= shift;

  // Drop vertices (other than x = 0) whose adjacent slopes agree.
  const std::size_t m = raw.size();
  auto at = [&](std::size_t i) -> Vertex {
    if (i < m) return raw[i];
    return Vertex{raw[i - m].x + 1, raw[i - m].y + degree};
  };
  std::vector<Vertex> kept{raw.front()};
  for (std::size_t i = 1; i < m; ++i)
    if (segment_slope(raw[i - 1], raw[i]) != segment_slope(raw[i], at(i + 1)))
      kept.push_back(raw[i]);
  return PLCircleMap(degree, std::move(kept));
}

PLCircleMap PLCircleMap::from_canonical(int degree,
                                        std::vector<Vertex> vertices) {
  PLCircleMap canonical = normalize(degree, vertices);
  const auto& want = canonical.vertices_;
  if (want == vertices) return canonical;
  std::size_t i = 0;
  while (i < want.size() && i < vertices.size() && want[i] == vertices[i]) ++i;
  std::string msg = "not in canonical form at vertex " + std::to_string(i);
  if (i < want.size()) {
    msg += "; expected (" + to_string(want[i].x) + ", " + to_string(want[i].y) + ")";
  } else {
    msg += "; canonical form has " + std::to_string(want.size()) + " vertices";
  }
  throw Error(ErrorCode::ParseError, msg);
}

PLCircleMap PLCircleMap::rotation(const Rational& angle) {
  return PLCircleMap(1, {{Rational(0), frac(angle)}});
}

PLCircleMap PLCircleMap::reflection(const Rational& c) {
  return PLCircleMap(-1, {{Rational(0), frac(c)}});
}

std::size_t PLCircleMap::piece_of(const Rational& t) const {
  auto it = std::upper_bound(
      vertices_.begin(), vertices_.end(), t,
      [](const Rational& value, const Vertex& v) { return value < v.x; });
  return static_cast<std::size_t>(it - vertices_.begin()) - 1;
}

Rational PLCircleMap::lift(const Rational& x) const {
  const Integer k = floor(x);
  const Rational t = x - k;
  const std::size_t i = piece_of(t);
  Rational y = vertices_[i].y + slopes_[i] * (t - vertices_[i].x);
  return y + Rational(k * degree_);
}

Rational PLCircleMap::lift_inverse(const Rational& y) const {
  const Rational& y0 = vertices_.front().y;
  if (degree_ == 1) {
    const Integer k = floor(y - y0);
    const Rational t = y - k;
    auto it = std::upper_bound(
        vertices_.begin(), vertices_.end(), t,
        [](const Rational& value, const Vertex& v) { return value < v.y; });
    const std::size_t i = static_cast<std::size_t>(it - vertices_.begin()) - 1;
    return vertices_[i].x + (t - vertices_[i].y) / slopes_[i] + k;
  }
  const Integer k = floor(y0 - y);
  const Rational t = y + k;
  auto it = std::partition_point(vertices_.begin(), vertices_.end(),
                                 [&](const Vertex& v) { return v.y >= t; });
  const std::size_t i = static_cast<std::size_t>(it - vertices_.begin()) - 1;
  return vertices_[i].x + (t - vertices_[i].y) / slopes_[i] + k;
}

Rational PLCircleMap::right_slope(const Rational& x) const {
  return slopes_[piece_of(frac(x))];
}

Rational PLCircleMap::left_slope(const Rational& x) const {
  const Rational t = frac(x);
  const std::size_t i = piece_of(t);
  if (vertices_[i].x != t) return slopes_[i];
  return slopes_[i == 0 ? slopes_.size() - 1 : i - 1];
}

bool PLCircleMap::is_identity() const {
  return degree_ == 1 && vertices_.size() == 1 && vertices_[0].y == 0;
}

// --- PLIntervalMap --------------------------------------------------------

PLIntervalMap::PLIntervalMap(std::vector<Vertex> vertices, bool unbounded_below,
                             bool unbounded_above)
    : unbounded_below_(unbounded_below), unbounded_above_(unbounded_above) {
  if (vertices.size() < 2)
    throw Error(ErrorCode::DegenerateInterval,
                "an interval map needs at least two vertices");
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (vertices[i].x <= vertices[i - 1].x)
      throw Error(ErrorCode::DuplicateX, "interval map x must increase",
                  vertices[i].x);
  orientation_ = sgn(vertices[1].y - vertices[0].y);
  if (orientation_ == 0)
    throw Error(ErrorCode::NonMonotone, "flat piece", vertices[0].x);
  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (sgn(vertices[i].y - vertices[i - 1].y) != orientation_)
      throw Error(ErrorCode::NonMonotone, "interval map is not monotone",
                  vertices[i].x);

  vertices_.push_back(vertices.front());
  for (std::size_t i = 1; i + 1 < vertices.size(); ++i)
    if (segment_slope(vertices[i - 1], vertices[i]) !=
        segment_slope(vertices[i], vertices[i + 1]))
      vertices_.push_back(vertices[i]);
  vertices_.push_back(vertices.back());
}

PLIntervalMap PLIntervalMap::affine(const Rational& slope,
                                    const Rational& offset,
                                    const Interval& hull, bool unbounded_below,
                                    bool unbounded_above) {
  return PLIntervalMap({{hull.lo, slope * hull.lo + offset},
                        {hull.hi, slope * hull.hi + offset}},
                       unbounded_below, unbounded_above);
}

Interval PLIntervalMap::hull() const {
  return {vertices_.front().x, vertices_.back().x};
}

Interval PLIntervalMap::image_hull() const {
  const Rational& a = vertices_.front().y;
  const Rational& b = vertices_.back().y;
  return orientation_ > 0 ? Interval{a, b} : Interval{b, a};
}

bool PLIntervalMap::in_domain(const Rational& x) const {
  return (unbounded_below_ || x >= vertices_.front().x) &&
         (unbounded_above_ || x <= vertices_.back().x);
}

Rational PLIntervalMap::slope(std::size_t piece) const {
  return segment_slope(vertices_[piece], vertices_[piece + 1]);
}

std::size_t PLIntervalMap::piece_of(const Rational& x) const {
  if (!in_domain(x))
    throw Error(ErrorCode::OutOfDomain, "point outside interval map domain", x);
  auto it = std::upper_bound(
      vertices_.begin(), vertices_.end(), x,
      [](const Rational& value, const Vertex& v) { return value < v.x; });
  std::size_t i = static_cast<std::size_t>(it - vertices_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, vertices_.size() - 2);
}

Rational PLIntervalMap::operator()(const Rational& x) const {
  const std::size_t i = piece_of(x);
  return vertices_[i].y + slope(i) * (x - vertices_[i].x);
}

std::size_t PLIntervalMap::piece_of_value(const Rational& y) const {
  const Interval img = image_hull();
  const bool below_ok = orientation_ > 0 ? unbounded_below_ : unbounded_above_;
  const bool above_ok = orientation_ > 0 ? unbounded_above_ : unbounded_below_;
  if ((y < img.lo && !below_ok) || (y > img.hi && !above_ok))
    throw Error(ErrorCode::OutOfDomain, "value outside interval map image", y);
  const std::size_t pieces = vertices_.size() - 1;
  for (std::size_t i = 0; i < pieces; ++i) {
    const Rational& a = vertices_[i].y;
    const Rational& b = vertices_[i + 1].y;
    if ((a <= y && y <= b) || (b <= y && y <= a)) return i;
  }
  // Beyond the hull: extension of an end piece.
  const bool before_first = orientation_ > 0 ? y < vertices_.front().y
                                             : y > vertices_.front().y;
  return before_first ? 0 : pieces - 1;
}

Rational PLIntervalMap::inverse_at(const Rational& y) const {
  const std::size_t i = piece_of_value(y);
  return vertices_[i].x + (y - vertices_[i].y) / slope(i);
}

Rational PLIntervalMap::right_slope(const Rational& x) const {
  std::size_t i = piece_of(x);
  if (x == vertices_[i + 1].x && i + 2 < vertices_.size()) ++i;
  return slope(i);
}

Rational PLIntervalMap::left_slope(const Rational& x) const {
  std::size_t i = piece_of(x);
  if (x == vertices_[i].x && i > 0) --i;
  return slope(i);
}

PLIntervalMap PLIntervalMap::inverse() const {
  std::vector<Vertex> swapped;
  swapped.reserve(vertices_.size());
  for (const auto& v : vertices_) swapped.push_back({v.y, v.x});
  if (orientation_ < 0) {
    std::reverse(swapped.begin(), swapped.end());
    return PLIntervalMap(std::move(swapped), unbounded_above_,
                         unbounded_below_);
  }
  return PLIntervalMap(std::move(swapped), unbounded_below_, unbounded_above_);
}

PLIntervalMap PLIntervalMap::shifted(const Rational& dx,
                                     const Rational& dy) const {
  std::vector<Vertex> moved = vertices_;
  for (auto& v : moved) {
    v.x += dx;
    v.y += dy;
  }
  return PLIntervalMap(std::move(moved), unbounded_below_, unbounded_above_);
}

bool PLIntervalMap::has_fixed_point() const {
  const std::size_t n = vertices_.size();
  auto disp = [&](std::size_t i) { return vertices_[i].y - vertices_[i].x; };
  for (std::size_t i = 0; i < n; ++i) {
    const bool interior = (i > 0 || unbounded_below_) &&
                          (i + 1 < n || unbounded_above_);
    if (interior && disp(i) == 0) return true;
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (sgn(disp(i)) * sgn(disp(i + 1)) < 0) return true;
  if (unbounded_below_) {
    const Rational s = slope(0) - 1;
    if (s != 0 && sgn(disp(0)) * sgn(s) > 0) return true;
  }
  if (unbounded_above_) {
    const Rational s = slope(n - 2) - 1;
    if (s != 0 && sgn(disp(n - 1)) * sgn(s) < 0) return true;
  }
  return false;
}

// --- free operations ------------------------------------------------------

PLCircleMap normalize(int degree, std::vector<Vertex> raw) {
  return PLCircleMap::normalize(degree, std::move(raw));
}

CirclePoint eval(const PLCircleMap& f, const CirclePoint& x) {
  return CirclePoint(f.lift(x.coord));
}

JumpRecord slopes_and_jump(const PLCircleMap& f, const CirclePoint& x) {
  Rational left = f.left_slope(x.coord);
  Rational right = f.right_slope(x.coord);
  Rational jump = left / right;
  return {x, std::move(left), std::move(right), std::move(jump)};
}

std::vector<JumpRecord> break_points(const PLCircleMap& f) {
  std::vector<JumpRecord> out;
  for (const auto& v : f.vertices()) {
    JumpRecord r = slopes_and_jump(f, CirclePoint(v.x));
    if (r.is_break()) out.push_back(std::move(r));
  }
  return out;
}

std::vector<Rational> vertex_positions(const PLCircleMap& f) {
  std::vector<Rational> xs;
  xs.reserve(f.size());
  for (const auto& v : f.vertices()) xs.push_back(v.x);
  return xs;
}

PLCircleMap compose(const PLCircleMap& f, const PLCircleMap& g) {
  std::vector<Rational> xs = vertex_positions(g);
  for (const auto& v : f.vertices()) xs.push_back(g.inverse_at(v.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Vertex> raw;
  raw.reserve(xs.size());
  for (auto& x : xs) {
    Rational y = f.lift(g.lift(x));
    raw.push_back({std::move(x), std::move(y)});
  }
  return PLCircleMap::normalize(f.degree() * g.degree(), std::move(raw));
}

PLCircleMap inverse(const PLCircleMap& f) {
  std::vector<Vertex> raw;
  raw.reserve(f.size());
  for (const auto& v : f.vertices()) raw.push_back({v.y, v.x});
  return PLCircleMap::normalize(f.degree(), std::move(raw));
}

LiftMap lift(const PLCircleMap& f) { return LiftMap{f, 0}; }

PLCircleMap project(const LiftMap& f) { return f.map; }

PLIntervalMap restrict(const PLCircleMap& f, const Interval& arc) {
  if (arc.length() <= 0)
    throw Error(ErrorCode::DegenerateInterval, "empty arc", arc.lo);
  if (arc.length() > 1)
    throw Error(ErrorCode::NotArcInvariantImage,
                "arc longer than the circle has no arc image", arc.lo);
  std::vector<Vertex> out{{arc.lo, f.lift(arc.lo)}};
  const Integer base = floor(arc.lo);
  for (int turn = 0; turn <= 1; ++turn)
    for (const auto& v : f.vertices()) {
      Rational x = v.x + base + turn;
      if (arc.lo < x && x < arc.hi) out.push_back({x, f.lift(x)});
    }
  std::sort(out.begin() + 1, out.end(),
            [](const Vertex& a, const Vertex& b) { return a.x < b.x; });
  out.push_back({arc.hi, f.lift(arc.hi)});
  return PLIntervalMap(std::move(out));
}

PLIntervalMap arc_homeo(const Interval& from, const Interval& to,
                        int orientation) {
  if (from.length() <= 0 || to.length() <= 0)
    throw Error(ErrorCode::DegenerateInterval, "arc_homeo needs proper arcs");
  if (orientation > 0) return PLIntervalMap({{from.lo, to.lo}, {from.hi, to.hi}});
  return PLIntervalMap({{from.lo, to.hi}, {from.hi, to.lo}});
}

PLIntervalMap compose(const PLIntervalMap& f, const PLIntervalMap& g) {
  std::vector<Rational> xs;
  for (const auto& v : g.vertices()) xs.push_back(v.x);
  for (const auto& v : f.vertices()) {
    try {
      Rational x = g.inverse_at(v.x);
      if (g.in_domain(x)) xs.push_back(std::move(x));
    } catch (const Error&) {
      // f breaks outside the image of g.
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Vertex> raw;
  for (auto& x : xs) {
    Rational y = f(g(x));
    raw.push_back({std::move(x), std::move(y)});
  }
  return PLIntervalMap(std::move(raw), g.unbounded_below(),
                       g.unbounded_above());
}

Interval ccw_arc(const Rational& a, const Rational& b) {
  Rational lo = frac(a);
  Rational hi = frac(b);
  if (hi <= lo) hi += 1;
  return {std::move(lo), std::move(hi)};
}

bool in_open_arc(const Rational& a, const Rational& b, const Rational& y) {
  const Interval arc = ccw_arc(a, b);
  Rational t = frac(y);
  if (t < arc.lo) t += 1;
  return arc.lo < t && t < arc.hi;
}

}  // namespace plrev
