#include "plrev/generate.hpp"

#include <algorithm>
#include <set>

#include "plrev/dynamics.hpp"

namespace plrev {

namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Rational random_point(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                      long denom_bound) {
  return random_points(rng, lo, hi, 1, denom_bound).front();
}

void require_spec(int breaks, long denom_bound) {
  if (breaks < 1) throw Error(ErrorCode::PreconditionFailed, "breaks must be at least 1");
  if (denom_bound < 2) throw Error(ErrorCode::PreconditionFailed, "denominator bound must be at least 2");
}

// Involution from a homeomorphism u of [a, b] onto [b, a + 1]: u there, u^-1
// on the complementary arc.
PLCircleMap glue_with_inverse(int degree, const std::vector<Vertex>& u) {
  std::vector<Vertex> vs;
  for (const auto& v : u) {
    vs.push_back(v);
    vs.push_back(degree > 0 ? Vertex{v.y, v.x + 1} : Vertex{v.y, v.x});
  }
  const Rational end = u.front().x + 1;
  std::vector<Vertex> kept;
  for (const auto& v : vs)
    if (v.x < end) kept.push_back(v);
  std::sort(kept.begin(), kept.end(), [](const Vertex& p, const Vertex& q) { return p.x < q.x; });
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  PLCircleMap tau = PLCircleMap::normalize(degree, kept);
  if (!is_involution(tau)) throw Error(ErrorCode::NotInvolution, "generated map is not an involution");
  return tau;
}

PLCircleMap involution_on(std::mt19937_64& rng, int degree, const Rational& a, const Rational& b,
                          int breaks, long denom_bound) {
  const std::size_t n = static_cast<std::size_t>(std::max(0, (breaks - 2) / 2));
  const auto xs = random_points(rng, a, b, n, denom_bound);
  auto ys = random_points(rng, b, a + 1, n, denom_bound);
  if (degree < 0) std::reverse(ys.begin(), ys.end());
  std::vector<Vertex> u{{a, degree > 0 ? b : a + 1}};
  for (std::size_t i = 0; i < n; ++i) u.push_back({xs[i], ys[i]});
  u.push_back({b, degree > 0 ? a + 1 : b});
  return glue_with_inverse(degree, u);
}

}  // namespace

RandomKind parse_random_kind(const std::string& s) {
  if (s == "map") return RandomKind::Map;
  if (s == "involution") return RandomKind::Involution;
  if (s == "reversible-plus") return RandomKind::ReversiblePlus;
  if (s == "reversible-minus") return RandomKind::ReversibleMinus;
  throw Error(ErrorCode::ParseError, "unknown random kind '" + s + "'");
}

std::string to_string(RandomKind k) {
  switch (k) {
    case RandomKind::Map: return "map";
    case RandomKind::Involution: return "involution";
    case RandomKind::ReversiblePlus: return "reversible-plus";
    case RandomKind::ReversibleMinus: return "reversible-minus";
  }
  return "map";
}

std::vector<Rational> random_points(std::mt19937_64& rng, const Rational& lo,
                                    const Rational& hi, std::size_t k, long denom_bound) {
  std::set<Rational> pts;
  for (std::size_t tries = 0; pts.size() < k && tries < 64 * k + 64; ++tries) {
    const long q = 2 + static_cast<long>(below(rng, static_cast<std::uint64_t>(denom_bound - 1)));
    const Integer pmin = floor(Rational(lo * q)) + 1;
    const Integer pmax = ceil(Rational(hi * q)) - 1;
    if (pmin > pmax) continue;
    const Integer span = pmax - pmin + 1;
    const std::uint64_t n = span.fits_ulong_p() ? span.get_ui() : ~0ULL;
    pts.insert(Rational(pmin + Integer(static_cast<unsigned long>(below(rng, n))), q));
  }
  // Fall back to bisection when the bounded grid is too sparse.
  while (pts.size() < k) {
    std::vector<Rational> all{lo};
    all.insert(all.end(), pts.begin(), pts.end());
    all.push_back(hi);
    std::size_t widest = 0;
    for (std::size_t i = 1; i + 1 < all.size(); ++i)
      if (all[i + 1] - all[i] > all[widest + 1] - all[widest]) widest = i;
    pts.insert((all[widest] + all[widest + 1]) / 2);
  }
  std::vector<Rational> out(pts.begin(), pts.end());
  for (auto& x : out) x.canonicalize();
  return out;
}

PLCircleMap random_circle_map(std::mt19937_64& rng, int degree, int breaks, long denom_bound) {
  require_spec(breaks, denom_bound);
  const std::size_t k = static_cast<std::size_t>(breaks);
  std::vector<Rational> xs{0};
  const auto rest = random_points(rng, 0, 1, k - 1, denom_bound);
  xs.insert(xs.end(), rest.begin(), rest.end());
  std::vector<Rational> ys{0};
  const auto yrest = random_points(rng, 0, 1, k - 1, denom_bound);
  ys.insert(ys.end(), yrest.begin(), yrest.end());
  const Rational offset = random_points(rng, -1, 1, 1, denom_bound).front();
  std::vector<Vertex> vs;
  for (std::size_t i = 0; i < k; ++i)
    vs.push_back({xs[i], Rational(offset + degree * ys[i])});
  return PLCircleMap::normalize(degree, vs);
}

PLCircleMap random_involution(std::mt19937_64& rng, int degree, int breaks, long denom_bound) {
  require_spec(breaks, denom_bound);
  const Rational a = random_point(rng, 0, 1, denom_bound);
  if (degree < 0) return random_involution_fixing(rng, a, breaks, denom_bound);
  const Rational b = random_point(rng, a, a + 1, denom_bound);
  return involution_on(rng, 1, a, b, breaks, denom_bound);
}

PLCircleMap random_involution_fixing(std::mt19937_64& rng, const Rational& a, int breaks,
                                     long denom_bound) {
  require_spec(breaks, denom_bound);
  const Rational b = random_point(rng, a, a + 1, denom_bound);
  return involution_on(rng, -1, a, b, breaks, denom_bound);
}

RandomInstance generate(const RandomSpec& spec) {
  require_spec(spec.breaks, spec.denom_bound);
  std::mt19937_64 rng(spec.seed);
  const int k = spec.breaks;
  const long d = spec.denom_bound;
  switch (spec.kind) {
    case RandomKind::Map: return {random_circle_map(rng, spec.degree, k, d), {}};
    case RandomKind::Involution: return {random_involution(rng, spec.degree, k, d), {}};
    case RandomKind::ReversiblePlus: {
      // Two fixed-point-free involutions, or two reflections sharing a fixed
      // point so that the product has one.
      PLCircleMap t1, t2;
      if (below(rng, 2) == 0) {
        t1 = random_involution(rng, 1, k, d);
        t2 = random_involution(rng, 1, k, d);
      } else {
        const Rational a = random_point(rng, 0, 1, d);
        t1 = random_involution_fixing(rng, a, k, d);
        t2 = random_involution_fixing(rng, a, k, d);
      }
      return {compose(t1, t2), {t1, t2}};
    }
    case RandomKind::ReversibleMinus: {
      PLCircleMap t1 = random_involution(rng, 1, k, d);
      PLCircleMap t2 = random_involution(rng, -1, k, d);
      if (below(rng, 2) == 0) std::swap(t1, t2);
      return {compose(t1, t2), {t1, t2}};
    }
  }
  throw Error(ErrorCode::PreconditionFailed, "unknown random kind");
}

}  // namespace plrev
