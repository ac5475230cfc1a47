#include <algorithm>
#include <functional>

#include "plrev/reversibility.hpp"

namespace plrev {

namespace {

// A fixed component (point or arc) or a fixed-point-free interval of a
// signature word, in lift coordinates.
struct Block {
  Interval span;
  bool interval = false;
  int sign = 0;
  std::optional<PLIntervalMap> self;  // intervals: the map as a self-map of span
};

using Partner = std::function<std::size_t(std::size_t)>;

Integer as_integer(const Rational& q) {
  if (q.get_den() != 1)
    throw Error(ErrorCode::PreconditionFailed, "expected an integer offset", q);
  return q.get_num();
}

PLIntervalMap self_map(const PLCircleMap& g, const Interval& span) {
  const PLIntervalMap r = restrict(g, span);
  return r.shifted(0, span.lo - g.lift(span.lo));
}

std::vector<Block> circle_blocks(const PLCircleMap& g, const SignatureWord& w,
                                 bool with_maps) {
  std::vector<Block> out;
  for (std::size_t i = 0; i < w.m(); ++i) {
    out.push_back({{w.components[i].a, w.components[i].b}, false, 0, std::nullopt});
    const SignedInterval& s = w.intervals[i];
    Block b{{s.lo, s.hi}, true, s.sign, std::nullopt};
    if (with_maps) b.self = self_map(g, b.span);
    out.push_back(std::move(b));
  }
  return out;
}

// Sub-map of g on [s, t].
PLIntervalMap sub_map(const PLIntervalMap& g, const Rational& s, const Rational& t) {
  std::vector<Vertex> vs{{s, g(s)}};
  for (const auto& v : g.vertices())
    if (s < v.x && v.x < t) vs.push_back(v);
  vs.push_back({t, g(t)});
  return PLIntervalMap(std::move(vs));
}

// Word of an increasing g fixing both ends of its domain: components and
// the fixed-point-free gaps between them.
std::vector<Block> line_blocks(const PLIntervalMap& g) {
  const auto& vs = g.vertices();
  std::vector<Interval> segs;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const Rational d0 = vs[i].y - vs[i].x;
    const Rational d1 = vs[i + 1].y - vs[i + 1].x;
    if (d0 == 0 && d1 == 0) {
      segs.push_back({vs[i].x, vs[i + 1].x});
    } else if (d0 == 0) {
      segs.push_back({vs[i].x, vs[i].x});
    } else if (sign(d0) * sign(d1) < 0) {
      const Rational x = vs[i].x + (vs[i + 1].x - vs[i].x) * (-d0) / (d1 - d0);
      segs.push_back({x, x});
    }
  }
  if (vs.back().y == vs.back().x) segs.push_back({vs.back().x, vs.back().x});
  if (segs.empty() || segs.front().lo != vs.front().x || segs.back().hi != vs.back().x)
    throw Error(ErrorCode::PreconditionFailed, "interval map must fix its endpoints");

  std::vector<Interval> comps;
  for (const auto& s : segs) {
    if (!comps.empty() && s.lo <= comps.back().hi)
      comps.back().hi = std::max(comps.back().hi, s.hi);
    else
      comps.push_back(s);
  }
  std::vector<Block> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out.push_back({comps[i], false, 0, std::nullopt});
    if (i + 1 == comps.size()) break;
    Block b{{comps[i].hi, comps[i + 1].lo}, true, 0, std::nullopt};
    b.self = sub_map(g, b.span.lo, b.span.hi);
    const Rational mid = b.span.midpoint();
    b.sign = sign(Rational((*b.self)(mid) - mid));
    out.push_back(std::move(b));
  }
  return out;
}

// Orientation +1 pairs negate signs, orientation -1 pairs keep them.
bool blocks_match(const std::vector<Block>& bl, const Partner& partner, int orientation) {
  for (std::size_t p = 0; p < bl.size(); ++p) {
    const Block& a = bl[p];
    const Block& b = bl[partner(p)];
    if (a.interval != b.interval) return false;
    if (a.interval) {
      if (b.sign != (orientation > 0 ? -a.sign : a.sign)) return false;
    } else if ((a.span.length() == 0) != (b.span.length() == 0)) {
      return false;
    }
  }
  return true;
}

std::vector<GluePiece> pair_blocks(const std::vector<Block>& bl, const Partner& partner,
                                   int orientation) {
  std::vector<GluePiece> out;
  for (std::size_t p = 0; p < bl.size(); ++p) {
    const std::size_t q = partner(p);
    if (q < p) continue;
    const Block& a = bl[p];
    const Block& b = bl[q];
    if (!a.interval && a.span.length() == 0) {
      out.push_back(point_piece(a.span.lo, b.span.lo));
      if (q != p) out.push_back(point_piece(b.span.lo, a.span.lo));
      continue;
    }
    if (!a.interval) {
      out.push_back(map_piece(a.span, LazyMap(arc_homeo(a.span, b.span, orientation)),
                              b.span, orientation));
      if (q != p)
        out.push_back(map_piece(b.span, LazyMap(arc_homeo(b.span, a.span, orientation)),
                                a.span, orientation));
      continue;
    }
    if (q == p) {
      out.push_back(map_piece(a.span, reverse_fpf(*a.self), a.span, -1));
      continue;
    }
    const PLIntervalMap& u = *a.self;
    const PLIntervalMap v = b.self->inverse();
    LazyMap theta = orientation > 0
                        ? conjugate_fpf(u, v)
                        : LazyMap::compose({fd_coordinate(v).inverse(), line_reflection(0),
                                            fd_coordinate(u)});
    out.push_back(map_piece(a.span, theta, b.span, orientation));
    out.push_back(map_piece(b.span, theta.inverse(), a.span, orientation));
  }
  return out;
}

Partner half_shift_partner(std::size_t m) {
  return [m](std::size_t p) { return (p + m) % (2 * m); };
}

Partner reflection_partner(std::size_t m, std::size_t axis) {
  return [m, axis](std::size_t p) { return (axis + 2 * m - p) % (2 * m); };
}

Rational arc_length(const Rational& x, const Rational& y) {
  return frac(x) == frac(y) ? Rational(0) : ccw_arc(x, y).length();
}

// Orientation-reversing flip of [lo, hi].
LazyMap interval_flip(const Interval& I) {
  return LazyMap(PLIntervalMap({{I.lo, I.hi}, {I.hi, I.lo}}));
}

// Involution of Y = [lo, hi] reversing g there; a single point needs none.
std::optional<LazyMap> reflect_span(const PLCircleMap& g, const Interval& span) {
  if (span.length() == 0) return std::nullopt;
  if (g.is_identity()) return interval_flip(span);
  return reflect_interval(self_map(g, span));
}

LiftMap lift_through(const PLCircleMap& h, const Rational& from, const Rational& to) {
  return LiftMap{h, as_integer(to - h.lift(from))};
}

// mu with mu F = F^-1 mu and mu g = g^-1 mu, from involutions of Y0 = [alpha,
// beta] and J = [beta, F(alpha)] reversing g. The translates F^q(Y0) and
// F^q(J) tile the circle when rho(F) = 1/n and alpha, beta are in Fix(g).
// mu = F^(1-q) nu_Y F^-q on F^q(Y0) and F^-q nu_J F^-q on F^q(J).
std::optional<LazyMap> tile_reverser(const PLCircleMap& F, const PLCircleMap& g, long n,
                                     const Rational& alpha, const Rational& beta) {
  const Rational Fa = alpha + arc_length(alpha, F(alpha));
  if (beta > Fa) return std::nullopt;
  const Interval Y0{alpha, beta};
  const Interval J{beta, Fa};
  std::optional<LazyMap> nu_y, nu_j;
  try {
    nu_y = reflect_span(g, Y0);
    nu_j = reflect_span(g, J);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionFailed) throw;
    return std::nullopt;
  }

  std::vector<PLCircleMap> fwd{PLCircleMap::identity()}, back{PLCircleMap::identity()};
  const PLCircleMap Finv = inverse(F);
  for (long q = 1; q <= n; ++q) {
    fwd.push_back(compose(F, fwd.back()));
    back.push_back(compose(Finv, back.back()));
  }
  // A[q] = F^q(alpha), B[q] = F^q(beta), laid out anticlockwise from alpha.
  std::vector<Rational> A(n + 1), B(n);
  A[0] = alpha;
  for (long q = 0; q < n; ++q) {
    B[q] = A[q] + arc_length(fwd[q](alpha), fwd[q](beta));
    A[q + 1] = B[q] + arc_length(fwd[q](beta), fwd[q + 1](alpha));
  }
  if (A[n] != alpha + 1) return std::nullopt;
  auto idx = [n](long q) { return static_cast<std::size_t>(((q % n) + n) % n); };

  std::vector<GluePiece> pieces;
  for (long q = 0; q < n; ++q) {
    const std::size_t r = idx(1 - q);
    const PLCircleMap& up = q == 0 ? fwd[1] : back[q - 1];  // F^(1-q)
    if (!nu_y) {
      pieces.push_back(point_piece(A[q], B[r]));
    } else {
      const LazyMap mu = LazyMap::compose({LazyMap(lift_through(up, beta, B[r])), *nu_y,
                                           LazyMap(lift_through(back[q], A[q], alpha))});
      pieces.push_back(map_piece({A[q], B[q]}, mu, {A[r], B[r]}, -1));
    }
    if (!nu_j) continue;
    const std::size_t t = idx(-q);
    const LazyMap mu = LazyMap::compose({LazyMap(lift_through(back[q], Fa, A[t + 1])), *nu_j,
                                         LazyMap(lift_through(back[q], B[q], beta))});
    pieces.push_back(map_piece({B[q], A[q + 1]}, mu, {B[t], A[t + 1]}, -1));
  }
  return LazyMap::glue(Space::Circle, std::move(pieces));
}

}  // namespace

bool admits_half_shift(const SignatureWord& w) {
  const std::size_t m = w.m();
  if (w.identity || m == 0 || m % 2 != 0) return false;
  return blocks_match(circle_blocks(PLCircleMap::identity(), w, false),
                      half_shift_partner(m), 1);
}

std::vector<std::size_t> reflection_axes(const SignatureWord& w) {
  std::vector<std::size_t> out;
  const std::size_t m = w.m();
  if (w.identity || m == 0) return out;
  const auto bl = circle_blocks(PLCircleMap::identity(), w, false);
  for (std::size_t c = 0; c < 2 * m; ++c)
    if (blocks_match(bl, reflection_partner(m, c), -1)) out.push_back(c);
  return out;
}

LazyMap half_shift_reverser(const PLCircleMap& f) {
  const SignatureWord w = signature_word(f);
  if (!admits_half_shift(w))
    throw Error(ErrorCode::PreconditionFailed, "word admits no half shift");
  return LazyMap::glue(Space::Circle,
                       pair_blocks(circle_blocks(f, w, true), half_shift_partner(w.m()), 1));
}

LazyMap reflection_reverser(const PLCircleMap& g, std::size_t axis) {
  const SignatureWord w = signature_word(g);
  const auto bl = circle_blocks(g, w, true);
  const Partner partner = reflection_partner(w.m(), axis);
  if (w.identity || w.m() == 0 || !blocks_match(bl, partner, -1))
    throw Error(ErrorCode::PreconditionFailed, "not a reflection axis of the word");
  return LazyMap::glue(Space::Circle, pair_blocks(bl, partner, -1));
}

LazyMap reflect_interval(const PLIntervalMap& g) {
  if (g.orientation() != 1)
    throw Error(ErrorCode::PreconditionFailed, "interval map must be increasing");
  const auto bl = line_blocks(g);
  const std::size_t nb = bl.size();
  const Partner partner = [nb](std::size_t p) { return nb - 1 - p; };
  if (!blocks_match(bl, partner, -1))
    throw Error(ErrorCode::PreconditionFailed, "fixed-set word has no symmetric pairing");
  return LazyMap::glue(Space::Line, pair_blocks(bl, partner, -1));
}

AnyMap transfer_reverser_from_power(const PLCircleMap& f, long n, const AnyMap& tau) {
  if (f.degree() != 1) throw Error(ErrorCode::WrongDegree, "f must preserve orientation");
  if (n < 1) throw Error(ErrorCode::PreconditionFailed, "power must be positive");
  if (degree(tau) != -1)
    throw Error(ErrorCode::PreconditionFailed, "tau must reverse orientation");
  for (const Claim& c : {involution_claim(tau), reverses_claim(tau, f, n)}) {
    const VerificationReport r = sample_verify(c);
    if (!r.passed())
      throw Error(ErrorCode::PreconditionFailed, "tau fails " + c.name, r.counterexample);
  }
  if (n == 1) return tau;

  // rho(f) = k/n0 in lowest terms; F = f^j with jk = 1 (mod n0) has rotation
  // number 1/n0, and f = F^k g^-t with g = f^n0, so a common reverser of F
  // and g reverses f.
  const RotationNumberResult rho = rotation_number_rational(f, static_cast<int>(n));
  if (!rho.rho) throw Error(ErrorCode::PreconditionFailed, "f^n has no fixed point");
  const long n0 = rho.rho->get_den().get_si();
  const long k = rho.rho->get_num().get_si();
  if (n0 == 1) {
    if (f.is_identity()) return PLCircleMap::reflection();
    const auto axes = reflection_axes(signature_word(f));
    if (axes.empty()) throw Error(ErrorCode::PreconditionFailed, "word of f has no reflection axis");
    return reflection_reverser(f, axes.front());
  }
  long j = 1;
  while ((j * k) % n0 != 1) ++j;
  const PLCircleMap F = power(f, j);
  const PLCircleMap g = power(f, n0);

  std::vector<std::pair<Rational, Rational>> candidates;
  if (g.is_identity()) {
    candidates.push_back({Rational(0), Rational(0)});
  } else {
    const auto comps = fixed_set(g).components;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      candidates.push_back({comps[i].a, comps[i].b});
      const Rational next = i + 1 < comps.size() ? comps[i + 1].a : comps[0].a + 1;
      candidates.push_back({comps[i].b, next});
    }
  }
  for (const auto& [alpha, beta] : candidates) {
    const Rational a0 = frac(alpha);
    if (auto mu = tile_reverser(F, g, n0, a0, beta - alpha + a0)) return *mu;
  }
  throw Error(ErrorCode::PreconditionFailed, "no symmetric fundamental domain for f");
}

AnyMap make_involution_from_minus_reverser(const PLCircleMap& f, const PLCircleMap& h) {
  if (f.degree() != 1) throw Error(ErrorCode::WrongDegree, "f must preserve orientation");
  if (h.degree() != -1) throw Error(ErrorCode::WrongDegree, "h must reverse orientation");
  if (compose(h, compose(f, inverse(h))) != inverse(f)) {
    const VerificationReport r =
        sample_verify({"reverses", {h, f, inverse(h)}, {inverse(f)}, Space::Circle, std::nullopt});
    throw Error(ErrorCode::NotAReverser, "h f h^-1 differs from f^-1", r.counterexample);
  }
  if (f.is_identity()) return PLCircleMap::reflection();
  const FixedSet fix = fixed_set(f);
  if (fix.empty()) throw Error(ErrorCode::EmptyFixedSet, "f has no fixed point");

  auto gap_piece = [&](const Interval& arc) {
    return map_piece(arc, reverse_fpf(self_map(f, arc)), arc, -1);
  };
  if (fix.components.size() == 1 && !fix.components.front().is_arc()) {
    const Rational x0 = fix.components.front().a;
    return LazyMap::glue(Space::Circle,
                         {point_piece(x0, x0), gap_piece({x0, x0 + 1})});
  }

  const auto hfix = fixed_set(h).components;
  const Rational a = hfix.at(0).a;
  const Rational b = hfix.at(1).a;
  // Nearest points of Fix(f) to a and to b inside [a, b].
  std::optional<Rational> c, d;
  for (const auto& comp : fix.components) {
    for (int t = -1; t <= 1; ++t) {
      const Rational lo = std::max(Rational(comp.a + t), a);
      const Rational hi = std::min(Rational(comp.b + t), b);
      if (lo > hi) continue;
      if (!c || lo < *c) c = lo;
      if (!d || hi > *d) d = hi;
    }
  }
  if (!c) throw Error(ErrorCode::PreconditionFailed, "no fixed point of f between those of h");

  const Rational hc = h(*c);
  const Rational hd = h(*d);
  const LazyMap H(h);
  std::vector<GluePiece> pieces;
  if (*c < *d) {
    const Interval cd{*c, *d};
    const Interval back = ccw_arc(hd, hc);
    pieces.push_back(map_piece(cd, H, back, -1));
    pieces.push_back(map_piece(back, H.inverse(), cd, -1));
  } else {
    pieces.push_back(point_piece(*c, hc));
  }
  if (*d != b) pieces.push_back(gap_piece(ccw_arc(*d, hd)));
  if (*c != a) pieces.push_back(gap_piece(ccw_arc(hc, *c)));
  return LazyMap::glue(Space::Circle, std::move(pieces));
}

LazyMap signature_conjugator(const PLCircleMap& f, const PLCircleMap& g) {
  if (f.degree() != 1 || g.degree() != 1)
    throw Error(ErrorCode::WrongDegree, "both maps must preserve orientation");
  const SignatureWord wf = signature_word(f);
  const SignatureWord wg = signature_word(g);
  bool same = wf.identity == wg.identity && wf.components == wg.components &&
              wf.intervals.size() == wg.intervals.size();
  for (std::size_t i = 0; same && i < wf.intervals.size(); ++i)
    same = wf.intervals[i].lo == wg.intervals[i].lo && wf.intervals[i].hi == wg.intervals[i].hi &&
           wf.intervals[i].sign == wg.intervals[i].sign;
  if (!same) throw Error(ErrorCode::SignatureMismatch, "signature words differ");
  if (wf.identity) return LazyMap(PLCircleMap::identity());
  if (wf.m() == 0) throw Error(ErrorCode::EmptyFixedSet, "f has no fixed point");

  const auto bf = circle_blocks(f, wf, true);
  const auto bg = circle_blocks(g, wg, true);
  std::vector<GluePiece> pieces;
  for (std::size_t p = 0; p < bf.size(); ++p) {
    const Block& b = bf[p];
    if (!b.interval && b.span.length() == 0) {
      pieces.push_back(point_piece(b.span.lo, b.span.lo));
    } else if (!b.interval) {
      pieces.push_back(map_piece(b.span, LazyMap(arc_homeo(b.span, b.span, 1)), b.span, 1));
    } else {
      const Rational base = default_basepoint(*b.self);
      pieces.push_back(
          map_piece(b.span, conjugate_fpf(*b.self, *bg[p].self, base, base), b.span, 1));
    }
  }
  return LazyMap::glue(Space::Circle, std::move(pieces));
}

PLCircleMap conjugate_involution_to_rotation(const PLCircleMap& tau) {
  if (tau.degree() != 1) throw Error(ErrorCode::WrongDegree, "tau must preserve orientation");
  if (tau.is_identity() || !is_involution(tau))
    throw Error(ErrorCode::NotInvolution, "need an involution other than the identity");
  const Rational half(1, 2);
  const Rational t0 = tau.lift(0);
  // psi = v on [0, 1/2], tau v r_{1/2}^-1 on [1/2, 1]
  std::vector<Vertex> vs{{0, 0}, {half, t0}};
  for (const auto& v : tau.vertices())
    if (0 < v.x && v.x < t0) vs.push_back({half + v.x * half / t0, v.y});
  PLCircleMap psi = PLCircleMap::normalize(1, std::move(vs));
  if (compose(inverse(psi), compose(tau, psi)) != PLCircleMap::rotation(half))
    throw Error(ErrorCode::PreconditionFailed, "rotation conjugacy check failed");
  return psi;
}

PLCircleMap conjugate_involution_to_reflection(const PLCircleMap& tau) {
  if (tau.degree() != -1) throw Error(ErrorCode::WrongDegree, "tau must reverse orientation");
  if (!is_involution(tau)) throw Error(ErrorCode::NotInvolution, "tau^2 is not the identity");
  const auto fix = fixed_set(tau).components;
  const Rational c = fix.at(0).a;
  const Rational d = fix.at(1).a;
  const Rational half(1, 2);
  const Rational k = d - tau.lift(d);
  // phi = u on [0, 1/2], tau u s on [1/2, 1], u affine onto [c, d]
  std::vector<Vertex> vs{{0, c}, {half, d}};
  for (const auto& v : tau.vertices())
    if (c < v.x && v.x < d) vs.push_back({1 - (v.x - c) * half / (d - c), v.y + k});
  PLCircleMap phi = PLCircleMap::normalize(1, std::move(vs));
  if (compose(phi, compose(PLCircleMap::reflection(), inverse(phi))) != tau)
    throw Error(ErrorCode::PreconditionFailed, "reflection conjugacy check failed");
  return phi;
}

}  // namespace plrev
