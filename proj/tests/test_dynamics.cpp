#include <numeric>
#include <random>

#include "doctest.h"
#include "plrev/dynamics.hpp"

using namespace plrev;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

PLCircleMap f1() { return PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 2), q(3, 4)}}); }
PLCircleMap g1() {
  return PLCircleMap::normalize(
      1, {{q(0), q(0)}, {q(1, 4), q(3, 8)}, {q(1, 2), q(1, 2)}, {q(3, 4), q(5, 8)}});
}
PLCircleMap h0() {
  return PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 3), q(1, 5)}, {q(3, 4), q(2, 3)}});
}
PLCircleMap conj(const PLCircleMap& h, const PLCircleMap& f) {
  return compose(h, compose(f, inverse(h)));
}

bool in_component(const FixedComponent& c, const Rational& x) {
  Rational t = frac(x);
  if (t < c.a) t += 1;
  return c.a <= t && t <= c.b;
}

std::vector<Rational> samples(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) {
    long d = static_cast<long>(rng() % 200) + 1;
    out.push_back(q(static_cast<long>(rng() % d), d));
  }
  return out;
}

PLCircleMap random_map(std::mt19937_64& rng, int degree) {
  std::size_t n = rng() % 4 + 1;
  std::vector<Rational> xs, ys;
  while (xs.size() < n) {
    Rational x = q(static_cast<long>(rng() % 12), 12);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  while (ys.size() < n) {
    Rational y = q(static_cast<long>(rng() % 12), 12);
    if (std::find(ys.begin(), ys.end(), y) == ys.end()) ys.push_back(y);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  if (degree < 0) std::reverse(ys.begin(), ys.end());
  std::vector<Vertex> raw;
  for (std::size_t i = 0; i < n; ++i) raw.push_back({xs[i], ys[i]});
  return PLCircleMap::normalize(degree, raw);
}

}  // namespace

TEST_CASE("fixed sets") {
  CHECK(fixed_set(PLCircleMap::identity()).whole_circle);

  // 3x/2 = x only at 0, x/2 + 1/2 = x only at 1.
  auto fs = fixed_set(f1());
  REQUIRE(fs.components.size() == 1);
  CHECK(fs.components[0] == FixedComponent{q(0), q(0)});

  auto fr = fixed_set(PLCircleMap::reflection());
  REQUIRE(fr.components.size() == 2);
  CHECK(fr.components[0] == FixedComponent{q(0), q(0)});
  CHECK(fr.components[1] == FixedComponent{q(1, 2), q(1, 2)});

  // slope-1 piece on the diagonal, wrapping through 0
  auto a = PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 4), q(1, 4)}, {q(1, 2), q(5, 8)}, {q(3, 4), q(3, 4)}});
  auto fa = fixed_set(a);
  REQUIRE(fa.components.size() == 1);
  CHECK(fa.components[0] == FixedComponent{q(3, 4), q(5, 4)});

  CHECK(fixed_set(PLCircleMap::rotation(q(1, 3))).empty());
}

TEST_CASE("fixed sets agree with pointwise oracle on random maps") {
  std::mt19937_64 rng(77);
  auto pts = samples(300, 5);
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_map(rng, trial % 3 == 0 ? -1 : 1);
    auto fs = fixed_set(f);
    if (f.degree() == -1) CHECK(fs.components.size() == 2);
    for (const auto& c : fs.components) {
      CHECK(f(c.a) == frac(c.a));
      CHECK(f(c.b) == frac(c.b));
    }
    for (const auto& x : pts) {
      bool fixed = f(x) == x;
      bool listed = fs.whole_circle;
      for (const auto& c : fs.components) listed = listed || in_component(c, x);
      CHECK(fixed == listed);
    }
  }
}

TEST_CASE("signature words") {
  auto w = signature_word(f1());
  REQUIRE(w.m() == 1);
  CHECK(w.components[0] == FixedComponent{q(0), q(0)});
  CHECK(w.intervals[0] == SignedInterval{q(0), q(1), 1});

  auto w2 = signature_word(g1());
  REQUIRE(w2.m() == 2);
  CHECK(w2.components[0] == FixedComponent{q(0), q(0)});
  CHECK(w2.intervals[0] == SignedInterval{q(0), q(1, 2), 1});
  CHECK(w2.components[1] == FixedComponent{q(1, 2), q(1, 2)});
  CHECK(w2.intervals[1] == SignedInterval{q(1, 2), q(1), -1});
  // piecewise comparison with the diagonal
  CHECK(g1()(q(1, 8)) > q(1, 8));
  CHECK(g1()(q(5, 8)) < q(5, 8));

  CHECK(signature_word(PLCircleMap::identity()).identity);

  try {
    signature_word(PLCircleMap::rotation(q(1, 2)));
    FAIL("expected NoFixedPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoFixedPoint);
  }
  try {
    signature_word(PLCircleMap::reflection());
    FAIL("expected WrongDegree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongDegree);
  }
}

TEST_CASE("signature of inverse and conjugates") {
  std::mt19937_64 rng(91);
  auto pts = samples(500, 8);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto f = random_map(rng, 1);
    if (fixed_set(f).empty() || f.is_identity()) continue;
    auto w = signature_word(f);
    auto wi = signature_word(inverse(f));
    REQUIRE(wi.m() == w.m());
    for (std::size_t i = 0; i < w.m(); ++i) {
      CHECK(wi.components[i] == w.components[i]);
      CHECK(wi.intervals[i].sign == -w.intervals[i].sign);
    }
    auto h = random_map(rng, trial % 2 ? -1 : 1);
    auto c = conj(h, f);
    for (const auto& x : pts) CHECK(delta(c, x) == h.degree() * delta(f, h.inverse_at(x)));
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("powers of a reversible map") {
  // f = s o tau with tau an involution satisfies s f s = f^-1.
  auto s = PLCircleMap::reflection();
  auto tau = conj(h0(), PLCircleMap::reflection(q(1, 3)));
  REQUIRE(is_involution(tau));
  auto f = compose(s, tau);
  CHECK(conj(s, f) == inverse(f));
  for (long n = 1; n <= 5; ++n)
    CHECK(compose(power(s, n), compose(f, power(s, -n))) == (n % 2 ? inverse(f) : f));
}

TEST_CASE("power") {
  CHECK(power(PLCircleMap::rotation(q(1, 2)), 2).is_identity());
  CHECK(power(PLCircleMap::rotation(q(1, 3)), 3).is_identity());
  CHECK(power(f1(), 0).is_identity());
  auto f = f1();
  auto f2 = power(f, 2);
  std::vector<Rational> expected{q(0), f.inverse_at(q(1, 2)), q(1, 2)};
  std::vector<Rational> got;
  for (const auto& b : break_points(f2)) got.push_back(b.point.coord);
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
  for (const auto& x : samples(100, 2)) CHECK(f2(x) == f(f(x)));
  CHECK(compose(power(f, -3), power(f, 3)).is_identity());
  auto pts = samples(40, 4);
  for (int n = 1; n <= 4; ++n) {
    auto g = g1();
    auto fs = fixed_set(g);
    auto fn = fixed_set(power(g, n));
    for (const auto& c : fs.components) {
      bool found = false;
      for (const auto& d : fn.components) found = found || in_component(d, c.a);
      CHECK(found);
    }
  }
}

TEST_CASE("n_f and rotation numbers") {
  CHECK(n_f(PLCircleMap::rotation(q(1, 3)), 64).value == 3);
  CHECK(n_f(f1(), 64).value == 1);

  // Conjugate of an irrational-looking rational rotation: no periodic point
  // below the denominator.
  auto crafted = conj(h0(), PLCircleMap::rotation(q(5, 13)));
  CHECK(!n_f(crafted, 8).value);
  CHECK(n_f(crafted, 8).bound == 8);
  CHECK(n_f(crafted, 64).value == 13);
  auto far = conj(h0(), PLCircleMap::rotation(q(34, 89)));
  auto nf = n_f(far, 64);
  CHECK(!nf.value);
  CHECK(nf.bound == 64);
  for (int k = 1; k <= 64; ++k) CHECK(fixed_set(power(far, k)).empty());

  CHECK(rotation_number_rational(PLCircleMap::rotation(q(1, 2)), 64).rho == q(1, 2));
  auto r0 = rotation_number_rational(f1(), 64);
  CHECK(r0.rho == 0);
  CHECK(r0.periodic_point == 0);
  CHECK(rotation_number_rational(PLCircleMap::rotation(q(2, 5)), 64).rho == q(2, 5));
  CHECK(rotation_number_rational(crafted, 64).rho == q(5, 13));
  CHECK(!rotation_number_rational(far, 64).known());

  for (long den = 1; den <= 12; ++den)
    for (long num = 0; num < den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      auto r = conj(h0(), PLCircleMap::rotation(q(num, den)));
      CHECK(n_f(r, 64).value == den);
      CHECK(rotation_number_rational(r, 64).rho == q(num, den));
    }

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_map(rng, 1);
    CHECK(!fixed_set(f).empty() == (rotation_number_rational(f, 1).rho == 0));
  }
}

TEST_CASE("involutions") {
  CHECK(is_involution(PLCircleMap::rotation(q(1, 2))));
  CHECK(!is_involution(f1()));
  CHECK(f1()(f1()(q(1, 4))) == q(9, 16));
  CHECK(is_involution(PLCircleMap::reflection()));
}

TEST_CASE("common fixed points") {
  CHECK(common_fixed_point(f1(), f1()).coord == 0);
  CHECK(common_fixed_point(f1(), PLCircleMap::identity()).coord == 0);
  auto g = g1();
  auto g2 = power(g, 2);
  auto p = common_fixed_point(g, g2);
  CHECK(g(p.coord) == p.coord);
  CHECK(g2(p.coord) == p.coord);
  CHECK((p.coord == 0 || p.coord == q(1, 2)));

  // g fixes 1/4 only through its own fixed set; f slides it to an endpoint.
  auto k = PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 4), q(1, 2)}, {q(1, 2), q(3, 4)}});
  auto kk = power(k, 3);
  auto c = common_fixed_point(k, kk);
  CHECK(k(c.coord) == c.coord);

  try {
    common_fixed_point(f1(), PLCircleMap::rotation(q(1, 2)));
    FAIL("expected NotCommuting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCommuting);
  }
  try {
    auto r = PLCircleMap::rotation(q(1, 3));
    common_fixed_point(power(r, 3), r);
    FAIL("expected EmptyFixedSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFixedSet);
  }
}
