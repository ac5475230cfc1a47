#include "plrev/factorize.hpp"

#include <algorithm>

namespace plrev {

namespace {

std::vector<Rational> merged_xs(const PLFunction& a, const PLFunction& b, const Interval& dom) {
  std::vector<Rational> xs{dom.lo, dom.hi};
  for (const auto* f : {&a, &b})
    for (const auto& v : f->vertices)
      if (dom.contains_open(v.x)) xs.push_back(v.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

// Grid on which both functions are linear between consecutive points, with
// their crossings added.
std::vector<Rational> crossing_grid(const PLFunction& a, const PLFunction& b,
                                    const Interval& dom) {
  std::vector<Rational> xs = merged_xs(a, b, dom);
  std::vector<Rational> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    out.push_back(xs[i]);
    const Rational d0 = a(xs[i]) - b(xs[i]);
    const Rational d1 = a(xs[i + 1]) - b(xs[i + 1]);
    if (sign(d0) * sign(d1) < 0) out.push_back(xs[i] + (xs[i + 1] - xs[i]) * d0 / (d0 - d1));
  }
  out.push_back(xs.back());
  return out;
}

PLFunction pointwise(const PLFunction& a, const PLFunction& b, bool take_min) {
  const Interval dom{std::max(a.domain().lo, b.domain().lo),
                     std::min(a.domain().hi, b.domain().hi)};
  PLFunction out;
  for (const auto& x : crossing_grid(a, b, dom)) {
    const Rational va = a(x);
    const Rational vb = b(x);
    out.vertices.push_back({x, take_min ? std::min(va, vb) : std::max(va, vb)});
  }
  return out;
}

// below < above on the open domain, with equality allowed at its ends.
// Both are linear between consecutive grid points, so checking grid points
// decides the open pieces too.
std::optional<Rational> first_violation(const PLFunction& below, const PLFunction& above,
                                        const Interval& dom) {
  const auto xs = merged_xs(below, above, dom);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational gap = above(xs[i]) - below(xs[i]);
    const bool end = i == 0 || i + 1 == xs.size();
    if (gap < 0 || (gap == 0 && !end)) return xs[i];
  }
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (above(xs[i]) == below(xs[i]) && above(xs[i + 1]) == below(xs[i + 1]))
      return (xs[i] + xs[i + 1]) / 2;
  }
  return std::nullopt;
}

Factorization finish(const PLCircleMap& f, const std::vector<AnyMap>& maps, int deg) {
  Factorization out;
  const std::vector<std::string> claims{"involution", deg > 0 ? "degree+1" : "degree-1"};
  for (const auto& m : maps) out.factors.push_back(make_witness(f, m, claims));
  out.product_check = sample_verify(product_claim(maps, f));
  return out;
}

LazyMap fixing_point(const Rational& a, const LazyMap& m) {
  const Interval I{a, a + 1};
  return LazyMap::glue(Space::Circle, {point_piece(a, a), map_piece(I, m, I, -1)});
}

// tau f has exactly the fixed points x and y, + on (x, y) and - on (y, x),
// provided x, f(x), f^2(x) run anticlockwise.
Factorization factor_plus_at(const PLCircleMap& f, const Rational& X) {
  const Rational fx = f(X);
  const Rational A = X + ccw_arc(X, fx).length();
  PLIntervalMap Fr = restrict(f, {X, A});
  Fr = Fr.shifted(0, A - Fr(X));
  const Rational B = Fr(A);
  PLIntervalMap Gr = restrict(inverse(f), {X, A});
  Gr = Gr.shifted(0, X + 1 - Gr(A));

  // y in (x, f(x)) with f^-1(y) in (f^2(x), x), i.e. y in (f^3(x), f(x)).
  const Rational f3x = f(f(fx));
  const Rational len = std::min(Rational(A - X), ccw_arc(f3x, fx).length());
  const Rational y = A - len / 2;
  if (!(Gr(y) > B && Gr(y) < X + 1))
    throw Error(ErrorCode::PreconditionFailed, "no admissible second fixed point", y);

  const PLFunction F = to_function(Fr);
  const PLFunction G = to_function(Gr);
  const PLIntervalMap u1 = pl_strictly_between(
      {{X, y}, constant_function({X, A}, A), pl_min(F, G), A, Fr(y), 1});
  const PLIntervalMap u2 = pl_strictly_between({{y, A}, F, G, Fr(y), X + 1, 1});

  std::vector<Vertex> vs;
  for (const auto* u : {&u1, &u2})
    for (const auto& v : u->vertices()) {
      vs.push_back(v);
      vs.push_back({v.y, v.x + 1});
    }
  std::sort(vs.begin(), vs.end(), [](const Vertex& p, const Vertex& q) { return p.x < q.x; });
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  vs.erase(std::remove_if(vs.begin(), vs.end(), [&](const Vertex& v) { return v.x >= X + 1; }),
           vs.end());
  const PLCircleMap tau = PLCircleMap::normalize(1, vs);
  if (!is_involution(tau))
    throw Error(ErrorCode::PreconditionFailed, "constructed tau is not an involution");

  const PLCircleMap tf = compose(tau, f);
  const FixedSet fix = fixed_set(tf);
  std::vector<FixedComponent> expect{{frac(X), frac(X)}, {frac(y), frac(y)}};
  std::sort(expect.begin(), expect.end(),
            [](const FixedComponent& p, const FixedComponent& q) { return p.a < q.a; });
  if (fix.components != expect || delta(tf, (X + y) / 2) != 1 ||
      delta(tf, (y + X + 1) / 2) != -1)
    throw Error(ErrorCode::PreconditionFailed, "tau f has an unexpected signature", X);

  const LazyMap kappa = half_shift_reverser(tf);
  const LazyMap third = LazyMap::compose({kappa, LazyMap(tau), LazyMap(f)});
  Factorization out = finish(f, {tau, kappa, third}, 1);
  out.x = frac(X);
  out.y = frac(y);
  return out;
}

// A point moved by f^2: midpoint (or quarter point) of a piece of f^2.
Rational moved_point(const PLCircleMap& f2) {
  const auto xs = vertex_positions(f2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational next = i + 1 < xs.size() ? xs[i + 1] : xs[0] + 1;
    for (const Rational& t : {Rational((xs[i] + next) / 2), Rational((3 * xs[i] + next) / 4)})
      if (f2(t) != frac(t)) return frac(t);
  }
  throw Error(ErrorCode::PreconditionFailed, "f^2 is the identity");
}

}  // namespace

Rational PLFunction::operator()(const Rational& x) const {
  if (vertices.empty() || x < vertices.front().x || x > vertices.back().x)
    throw Error(ErrorCode::OutOfDomain, "outside the function's domain", x);
  auto it = std::lower_bound(vertices.begin(), vertices.end(), x,
                             [](const Vertex& v, const Rational& t) { return v.x < t; });
  if (it->x == x) return it->y;
  const Vertex& r = *it;
  const Vertex& l = *(it - 1);
  return l.y + (r.y - l.y) * (x - l.x) / (r.x - l.x);
}

PLFunction to_function(const PLIntervalMap& m) { return {m.vertices()}; }

PLFunction constant_function(const Interval& domain, const Rational& c) {
  return {{{domain.lo, c}, {domain.hi, c}}};
}

PLFunction pl_min(const PLFunction& a, const PLFunction& b) { return pointwise(a, b, true); }
PLFunction pl_max(const PLFunction& a, const PLFunction& b) { return pointwise(a, b, false); }

PLIntervalMap pl_strictly_between(const EnvelopeSpec& spec) {
  const Interval& dom = spec.domain;
  if (dom.length() <= 0)
    throw Error(ErrorCode::DegenerateInterval, "empty envelope domain", dom.lo);
  for (const auto* f : {&spec.lower, &spec.upper})
    if (f->vertices.empty() || f->domain().lo > dom.lo || f->domain().hi < dom.hi)
      throw Error(ErrorCode::OutOfDomain, "envelope does not cover the domain", dom.lo);

  std::vector<Rational> xs = merged_xs(spec.lower, spec.upper, dom);
  std::vector<Rational> grid;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    grid.push_back(xs[i]);
    grid.push_back((xs[i] + xs[i + 1]) / 2);
  }
  grid.push_back(xs.back());

  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational& t = grid[i];
    const Rational lo = spec.lower(t);
    const Rational hi = spec.upper(t);
    const bool first = i == 0;
    const bool last = i + 1 == grid.size();
    const std::optional<Rational>& forced = first ? spec.value_lo : spec.value_hi;
    if (!first && !last) {
      if (!(lo < hi)) throw Error(ErrorCode::Infeasible, "lower bound meets upper bound", t);
      vs.push_back({t, (lo + hi) / 2});
    } else if ((first || last) && forced) {
      if (*forced < lo || *forced > hi)
        throw Error(ErrorCode::Infeasible, "forced value outside the envelopes", t);
      vs.push_back({t, *forced});
    } else {
      if (lo > hi) throw Error(ErrorCode::Infeasible, "lower bound above upper bound", t);
      vs.push_back({t, (lo + hi) / 2});
    }
  }
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    if (sign(Rational(vs[i + 1].y - vs[i].y)) != spec.orientation)
      throw Error(ErrorCode::Infeasible, "envelopes force a non-monotone map", vs[i].x);

  PLIntervalMap u(vs);
  const PLFunction uf = to_function(u);
  if (auto bad = first_violation(spec.lower, uf, dom))
    throw Error(ErrorCode::Infeasible, "strict lower bound fails", *bad);
  if (auto bad = first_violation(uf, spec.upper, dom))
    throw Error(ErrorCode::Infeasible, "strict upper bound fails", *bad);
  return u;
}

PLIntervalMap strictly_above_involution(const PLIntervalMap& g) {
  if (g.orientation() != -1)
    throw Error(ErrorCode::PreconditionFailed, "g must reverse orientation");
  const Interval unit{0, 1};
  if (g.hull() != unit || g(0) != 1 || g(1) != 0)
    throw Error(ErrorCode::PreconditionFailed, "g must map [0, 1] onto itself");

  // Fixed point of g: g(x) - x decreases through 0.
  const auto& gv = g.vertices();
  Rational pg;
  for (std::size_t i = 0; i + 1 < gv.size(); ++i) {
    const Rational d0 = gv[i].y - gv[i].x;
    const Rational d1 = gv[i + 1].y - gv[i + 1].x;
    if (d0 >= 0 && d1 <= 0) {
      pg = d0 == 0 ? gv[i].x : gv[i].x + (gv[i + 1].x - gv[i].x) * d0 / (d0 - d1);
      break;
    }
  }
  const Rational p = (pg + 1) / 2;
  const PLFunction G = to_function(g);
  const PLFunction Gi = to_function(g.inverse());
  const PLFunction E = pl_max(G, Gi);
  const PLIntervalMap s0 = pl_strictly_between(
      {{p, 1}, E, constant_function(unit, p), p, Rational(0), -1});

  std::vector<Vertex> vs;
  const auto& sv = s0.vertices();
  for (auto it = sv.rbegin(); it != sv.rend(); ++it) vs.push_back({it->y, it->x});
  for (std::size_t i = 1; i < sv.size(); ++i) vs.push_back(sv[i]);
  PLIntervalMap sigma(vs);

  const PLFunction S = to_function(sigma);
  for (const auto* below : {&G, &Gi})
    if (auto bad = first_violation(*below, S, unit))
      throw Error(ErrorCode::PreconditionFailed, "sigma is not strictly above g", *bad);
  return sigma;
}

Factorization factor_three_involutions_plus(const PLCircleMap& f) {
  if (f.degree() != 1) throw Error(ErrorCode::WrongDegree, "f must preserve orientation");
  if (is_involution(f)) return finish(f, {f}, 1);
  const Rational x = moved_point(power(f, 2));
  if (in_open_arc(f(x), x, f(f(x)))) return factor_plus_at(f, x);

  // Reverse the anticlockwise order by conjugating with s.
  const PLCircleMap s = PLCircleMap::reflection();
  const Factorization inner = factor_plus_at(compose(s, compose(f, s)), frac(Rational(-x)));
  std::vector<AnyMap> maps;
  for (const auto& w : inner.factors) {
    if (const auto* m = std::get_if<PLCircleMap>(&w.map))
      maps.push_back(compose(s, compose(*m, s)));
    else
      maps.push_back(LazyMap::compose({LazyMap(s), std::get<LazyMap>(w.map), LazyMap(s)}));
  }
  Factorization out = finish(f, maps, 1);
  out.x = frac(Rational(-*inner.x));
  out.y = frac(Rational(-*inner.y));
  return out;
}

Factorization factor_three_involutions_minus(const PLCircleMap& f) {
  if (f.degree() != -1) throw Error(ErrorCode::WrongDegree, "f must reverse orientation");
  if (is_involution(f)) return finish(f, {f}, -1);
  const Rational a = fixed_set(f).components.front().a;
  PLIntervalMap g = restrict(f, {a, a + 1});
  g = g.shifted(0, a + 1 - g(a));
  const PLIntervalMap sigma = strictly_above_involution(g.shifted(-a, -a)).shifted(a, a);
  const PLIntervalMap v = compose(g, sigma);
  if (v.has_fixed_point())
    throw Error(ErrorCode::PreconditionFailed, "g sigma has a fixed point");
  const LazyMap w = reverse_fpf(v);
  const LazyMap wv = LazyMap::compose({w, LazyMap(v)});

  std::vector<Vertex> vs;
  for (const auto& p : sigma.vertices())
    if (p.x < a + 1) vs.push_back(p);
  const PLCircleMap sc = PLCircleMap::normalize(-1, vs);
  return finish(f, {fixing_point(a, w), fixing_point(a, wv), sc}, -1);
}

Factorization factor_three_involutions(const PLCircleMap& f) {
  return f.degree() > 0 ? factor_three_involutions_plus(f) : factor_three_involutions_minus(f);
}

}  // namespace plrev
