#include <set>
#include <random>

#include "doctest.h"
#include "plrev/generate.hpp"
#include "plrev/reversibility.hpp"
#include "support.hpp"

using namespace plrev;
using namespace plrev::testing;

namespace {

// Random circle homeomorphism fixing 0.
PLCircleMap random_fixing_zero(std::mt19937_64& rng, int k) {
  PLCircleMap m = random_map(rng, 1, k);
  return compose(PLCircleMap::rotation(frac(Rational(-m(0)))), m);
}

// rho = 1/2 but not an involution: r_{1/2} k with k fixing 0 and 1/2.
PLCircleMap half_turn_example() {
  const auto k = PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 4), q(3, 8)}, {q(1, 2), q(1, 2)}});
  return compose(PLCircleMap::rotation(q(1, 2)), k);
}

bool verified(const Witness& w) { return w.report.passed() && w.report.all_exact; }

void check_decision(const PLCircleMap& f, const Decision& d) {
  if (d.verdict != Verdict::Yes) return;
  REQUIRE(d.witness);
  CHECK(verified(*d.witness));
  CHECK(verify_witness(f, *d.witness).passed());
  if (d.plus_witness) CHECK(verified(*d.plus_witness));
}

}  // namespace

TEST_CASE("half-shift criterion against brute force") {
  std::mt19937_64 rng(41);
  int positives = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    ToyWord t;
    const std::size_t m = rng() % 8 + 1;
    // Bias toward shift-symmetric words so both outcomes are exercised.
    const bool symmetric = m % 2 == 0 && rng() % 2 == 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (symmetric && i >= m / 2) {
        t.arc.push_back(t.arc[i - m / 2]);
        t.signs.push_back(-t.signs[i - m / 2]);
      } else {
        t.arc.push_back(rng() % 3 == 0);
        t.signs.push_back(rng() % 2 ? 1 : -1);
      }
    }
    const SignatureWord w = realize(t);
    const bool expected = brute_half_shift(t);
    positives += expected;
    CHECK(admits_half_shift(w) == expected);
    const auto axes = reflection_axes(w);
    CHECK(axes.size() == brute_reflections(t));
    for (auto c : axes) CHECK(c % 2 == 0);
  }
  CHECK(positives > 100);
}

TEST_CASE("strong reversibility in PL+") {
  const auto d = decide_strongly_reversible_plplus(g1());
  CHECK(d.verdict == Verdict::Yes);
  CHECK(d.reason == "word-half-shift");
  check_decision(g1(), d);
  REQUIRE(d.witness);
  CHECK(degree(d.witness->map) == 1);
  CHECK(d.witness->report.fundamental_domain_checked);

  const auto d1 = decide_strongly_reversible_plplus(f1());
  CHECK(d1.verdict == Verdict::No);
  CHECK(d1.reason == "word-half-shift");

  const auto d3 = decide_strongly_reversible_plplus(PLCircleMap::rotation(q(1, 3)));
  CHECK(d3.verdict == Verdict::No);
  CHECK(d3.reason == "no-fixed-point");

  const auto r = decide_strongly_reversible_plplus(PLCircleMap::rotation(q(1, 2)));
  CHECK(r.verdict == Verdict::Yes);
  CHECK(r.reason == "f-squared-identity");
  check_decision(PLCircleMap::rotation(q(1, 2)), r);

  const auto id = decide_strongly_reversible_plplus(PLCircleMap::identity());
  CHECK(id.verdict == Verdict::Yes);
  CHECK(id.reason == "identity");
}

TEST_CASE("strong reversibility by orientation-reversing involutions") {
  const auto d = decide_strongly_reversible_by_minus(f1(), 64);
  CHECK(d.verdict == Verdict::Yes);
  CHECK(d.reason == "word-reflection");
  check_decision(f1(), d);
  REQUIRE(d.witness);
  CHECK(degree(d.witness->map) == -1);
  bool at_zero = false;
  for (const auto& x : as_lazy(d.witness->map).accumulation_points()) at_zero |= frac(x) == 0;
  CHECK(at_zero);

  const auto r3 = PLCircleMap::rotation(q(1, 3));
  const auto d3 = decide_strongly_reversible_by_minus(r3, 64);
  CHECK(d3.verdict == Verdict::Yes);
  check_decision(r3, d3);
  CHECK(compose(s(), compose(r3, s())) == inverse(r3));

  // Word [Point, +, Arc, +]: the axis through both components keeps both
  // signs, so this one is reversible.
  const auto pa = PLCircleMap::normalize(
      1, {{q(0), q(0)}, {q(1, 4), q(3, 8)}, {q(1, 2), q(1, 2)}, {q(3, 4), q(3, 4)},
          {q(7, 8), q(15, 16)}});
  const auto wpa = signature_word(pa);
  REQUIRE(wpa.m() == 2);
  CHECK(!wpa.components[0].is_arc());
  CHECK(wpa.components[1].is_arc());
  CHECK(reflection_axes(wpa) == std::vector<std::size_t>{0});
  const auto dpa = decide_strongly_reversible_by_minus(pa, 64);
  CHECK(dpa.verdict == Verdict::Yes);
  check_decision(pa, dpa);

  // Word [Point, +, Arc, -]: no axis matches types and signs.
  const auto pm = PLCircleMap::normalize(
      1, {{q(0), q(0)}, {q(1, 4), q(3, 8)}, {q(1, 2), q(1, 2)}, {q(3, 4), q(3, 4)},
          {q(7, 8), q(13, 16)}});
  CHECK(reflection_axes(signature_word(pm)).empty());
  const auto dpm = decide_strongly_reversible_by_minus(pm, 64);
  CHECK(dpm.verdict == Verdict::No);
  CHECK(dpm.reason == "word-reflection");

  // No periodic orbit up to the bound.
  const auto irr = conj(h0(), PLCircleMap::rotation(q(34, 89)));
  const auto du = decide_reversible_pl(irr, 64);
  CHECK(du.verdict == Verdict::Unknown);
  CHECK(du.reason == "n_f-bound");
  REQUIRE(du.bound);
  CHECK(*du.bound == 64);
}

TEST_CASE("reversibility in PL+") {
  const auto r3 = decide_reversible_plplus(PLCircleMap::rotation(q(1, 3)));
  CHECK(r3.verdict == Verdict::No);
  CHECK(r3.reason == "rho-not-0-or-half");
  CHECK(decide_reversible_plplus(g1()).verdict == Verdict::Yes);
  CHECK(decide_reversible_plplus(PLCircleMap::rotation(q(1, 2))).verdict == Verdict::Yes);

  // rho = 1/2 without being an involution
  const auto h = half_turn_example();
  CHECK(fixed_set(h).empty());
  CHECK(!fixed_set(power(h, 2)).empty());
  CHECK(!is_involution(h));
  const auto dh = decide_reversible_plplus(h);
  CHECK(dh.verdict == Verdict::Yes);
  check_decision(h, dh);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto f = random_map(rng, 1, static_cast<int>(rng() % 4) + 1);
    const auto d = decide_reversible_plplus(f);
    if (d.verdict == Verdict::Yes) {
      CHECK((!fixed_set(f).empty() || !fixed_set(power(f, 2)).empty()));
      check_decision(f, d);
    }
    CHECK(d.verdict != Verdict::Unknown);
  }
}

TEST_CASE("reversibility of orientation-reversing maps") {
  const auto ds = decide_reversible_minus(s());
  CHECK(ds.verdict == Verdict::Yes);
  CHECK(ds.reason == "f-squared-identity");
  check_decision(s(), ds);

  // s composed with a finite fixed-point-free involution: reversible, not an
  // involution.
  const auto tau2 = conj(h0(), PLCircleMap::rotation(q(1, 2)));
  REQUIRE(is_involution(tau2));
  const auto f = compose(s(), tau2);
  CHECK(!is_involution(f));
  const auto d = decide_reversible_minus(f);
  CHECK(d.verdict == Verdict::Yes);
  check_decision(f, d);
  CHECK(degree(d.witness->map) == -1);
  REQUIRE(d.plus_witness);
  CHECK(degree(d.plus_witness->map) == 1);

  // f = s on [0, 1/2] and k s on [1/2, 1], so f^2 = k on [0, 1/2]; k has
  // word [+, +, -].
  const auto bad = PLCircleMap::normalize(
      -1, {{q(0), q(1)}, {q(1, 2), q(1, 2)}, {q(5, 8), q(5, 16)}, {q(3, 4), q(1, 4)},
           {q(13, 16), q(7, 32)}, {q(7, 8), q(1, 8)}, {q(15, 16), q(3, 32)}});
  const auto fx = fixed_set(bad).components;
  REQUIRE(fx.size() == 2);
  CHECK(fx[0].a == 0);
  CHECK(fx[1].a == q(1, 2));
  const auto db = decide_reversible_minus(bad);
  CHECK(db.verdict == Verdict::No);
  CHECK(db.reason == "word-reflection");

  // Same shape with word [+, +].
  const auto good = PLCircleMap::normalize(
      -1, {{q(0), q(1)}, {q(1, 2), q(1, 2)}, {q(5, 8), q(7, 16)}, {q(3, 4), q(1, 4)},
           {q(7, 8), q(3, 16)}});
  const auto dg = decide_reversible_minus(good);
  CHECK(dg.verdict == Verdict::Yes);
  check_decision(good, dg);

  try {
    decide_reversible_minus(f1());
    FAIL("expected WrongDegree");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongDegree);
  }
}

TEST_CASE("full PL dispatch") {
  const auto r3 = PLCircleMap::rotation(q(1, 3));
  const auto d = decide_reversible_pl(r3, 64);
  CHECK(d.verdict == Verdict::Yes);
  check_decision(r3, d);
  const auto d1 = decide_reversible_pl(f1(), 64);
  CHECK(d1.verdict == Verdict::Yes);
  check_decision(f1(), d1);

  // Products of two involutions of equal degree.
  std::mt19937_64 rng(2024);
  for (int seed = 0; seed < 100; ++seed) {
    PLCircleMap t1, t2;
    if (seed % 2 == 0) {
      t1 = conj(random_map(rng, 1, 3), PLCircleMap::rotation(q(1, 2)));
      t2 = conj(random_map(rng, 1, 3), PLCircleMap::rotation(q(1, 2)));
    } else {
      // Sharing the fixed point 0 keeps rho(t1 t2) = 0.
      t1 = conj(random_fixing_zero(rng, 3), s());
      t2 = conj(random_fixing_zero(rng, 3), s());
    }
    REQUIRE(is_involution(t1));
    REQUIRE(is_involution(t2));
    const auto f = compose(t1, t2);
    const auto dd = decide_reversible_pl(f, 64);
    CHECK(dd.verdict == Verdict::Yes);
    check_decision(f, dd);
  }
}

TEST_CASE("transfer from a power") {
  const auto r3 = PLCircleMap::rotation(q(1, 3));
  CHECK(std::get<PLCircleMap>(transfer_reverser_from_power(r3, 1, s())) == s());
  const AnyMap mu = transfer_reverser_from_power(r3, 3, s());
  CHECK(degree(mu) == -1);
  CHECK(sample_verify(involution_claim(mu)).passed());
  CHECK(sample_verify(reverses_claim(mu, r3)).passed());

  // rho = 1/2 pipeline: reflection reverser of h^2, then transfer.
  const auto h = half_turn_example();
  const auto h2 = power(h, 2);
  const auto axes = reflection_axes(signature_word(h2));
  REQUIRE(!axes.empty());
  const LazyMap tau = reflection_reverser(h2, axes.front());
  CHECK(sample_verify(reverses_claim(tau, h2)).passed());
  const AnyMap mh = transfer_reverser_from_power(h, 2, tau);
  CHECK(sample_verify(involution_claim(mh)).passed());
  CHECK(sample_verify(reverses_claim(mh, h)).passed());

  try {
    transfer_reverser_from_power(f1(), 1, s());
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

TEST_CASE("transfer for rotation numbers k/n with k other than 1 and n-1") {
  auto check_transfer = [](const PLCircleMap& f) {
    const auto d = decide_strongly_reversible_by_minus(f, 64);
    REQUIRE(d.verdict == Verdict::Yes);
    check_decision(f, d);
    CHECK(degree(d.witness->map) == -1);
  };
  for (auto [k, n] : {std::pair{2, 5}, {3, 5}, {3, 7}, {2, 7}, {5, 8}, {4, 9}})
    check_transfer(conj(h0(), PLCircleMap::rotation(q(k, n))));

  // r_{k/n} G with G = A s A^-1 s, A commuting with r_{1/n} and fixing 0: reversed by s,
  // and Fix(f^n) = Fix(G^n) is a proper subset of the circle.
  std::mt19937_64 rng(515);
  for (auto [k, n] : {std::pair{2, 5}, {3, 7}, {3, 8}}) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto pts = random_points(rng, Rational(0), q(1, n), 3, 64);
      auto ys = random_points(rng, Rational(0), q(1, n), 3, 64);
      std::vector<Vertex> vs;
      for (int i = 0; i < n; ++i) {
        vs.push_back({q(i, n), q(i, n)});
        for (std::size_t t = 0; t < pts.size(); ++t) vs.push_back({pts[t] + q(i, n), ys[t] + q(i, n)});
      }
      const auto A = PLCircleMap::normalize(1, vs);
      const auto G = compose(compose(A, s()), compose(inverse(A), s()));
      const auto f = conj(random_map(rng, 1, 3), compose(PLCircleMap::rotation(q(k, n)), G));
      REQUIRE(!fixed_set(power(f, n)).empty());
      REQUIRE(!fixed_set(power(f, n)).whole_circle);
      check_transfer(f);
    }
  }
}

TEST_CASE("involutions from orientation-reversing reversers") {
  // f = s t2 with t2 = phi s phi^-1, phi = id on [-1/8, 1/8]: f = id there.
  const auto phi = PLCircleMap::normalize(
      1, {{q(0), q(0)}, {q(1, 8), q(1, 8)}, {q(1, 2), q(5, 8)}, {q(7, 8), q(7, 8)}});
  const auto f = compose(s(), conj(phi, s()));
  REQUIRE(!is_involution(f));
  for (const auto& h : {s(), compose(s(), PLCircleMap::normalize(
                                              1, {{q(0), q(0)}, {q(1, 16), q(1, 32)},
                                                  {q(1, 8), q(1, 8)}}))}) {
    REQUIRE(compose(h, compose(f, inverse(h))) == inverse(f));
    const AnyMap t = make_involution_from_minus_reverser(f, h);
    CHECK(degree(t) == -1);
    CHECK(sample_verify(involution_claim(t)).passed());
    CHECK(sample_verify(reverses_claim(t, f)).passed());
  }

  // One fixed point at 0, reversed by s.
  const auto one = PLCircleMap::normalize(1, {{q(0), q(0)}, {q(3, 4), q(1, 4)}});
  REQUIRE(fixed_set(one).components.size() == 1);
  const AnyMap t1 = make_involution_from_minus_reverser(one, s());
  CHECK(sample_verify(involution_claim(t1)).passed());
  CHECK(sample_verify(reverses_claim(t1, one)).passed());
  CHECK(eval(t1, q(0)) == 0);

  try {
    make_involution_from_minus_reverser(compose(f1(), PLCircleMap::rotation(q(1, 2))), s());
    FAIL("expected NotAReverser");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAReverser);
    REQUIRE(e.point());
    const auto g = compose(f1(), PLCircleMap::rotation(q(1, 2)));
    const Rational x = *e.point();
    CHECK(s()(g(s().inverse_at(x))) != inverse(g)(x));
  }
}

TEST_CASE("signature conjugators") {
  const auto v = signature_conjugator(f1(), f1());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Rational x = q(static_cast<long>(rng() % 997), 997);
    CHECK(v(x) == x);
  }
  const auto f2 = power(f1(), 2);
  const auto w = signature_conjugator(f1(), f2);
  CHECK(w(q(0)) == 0);
  for (int i = 0; i < 200; ++i) {
    const Rational x = q(static_cast<long>(rng() % 1999) + 1, 2000);
    CHECK(frac(w(f1()(x))) == f2(w(x)));
  }
  try {
    signature_conjugator(f1(), inverse(f1()));
    FAIL("expected SignatureMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SignatureMismatch);
  }
}

TEST_CASE("conjugating involutions to normal forms") {
  const auto r = PLCircleMap::rotation(q(1, 2));
  CHECK(conjugate_involution_to_rotation(r).is_identity());
  const auto t = conj(h0(), r);
  const auto psi = conjugate_involution_to_rotation(t);
  CHECK(compose(inverse(psi), compose(t, psi)) == r);
  try {
    conjugate_involution_to_rotation(PLCircleMap::identity());
    FAIL("expected NotInvolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvolution);
  }

  CHECK(conjugate_involution_to_reflection(s()).is_identity());
  const auto half = PLCircleMap::reflection(q(1, 2));
  const auto phi = conjugate_involution_to_reflection(half);
  CHECK(compose(phi, compose(s(), inverse(phi))) == half);
  const auto t2 = conj(h0(), s());
  const auto phi2 = conjugate_involution_to_reflection(t2);
  CHECK(compose(phi2, compose(s(), inverse(phi2))) == t2);
  const auto bad = compose(f1(), s());
  CHECK(!compose(bad, bad).is_identity());
  try {
    conjugate_involution_to_reflection(bad);
    FAIL("expected NotInvolution");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotInvolution);
  }
}

TEST_CASE("witness verification") {
  const auto d = decide_strongly_reversible_plplus(g1());
  REQUIRE(d.witness);
  CHECK(verify_witness(g1(), *d.witness).passed());

  Witness bad{s(), {"involution", "reverses"}, {}};
  const auto rep = verify_witness(f1(), bad);
  CHECK(!rep.passed());
  REQUIRE(rep.counterexample);
  const Rational x = *rep.counterexample;
  CHECK(s()(f1()(s()(x))) != inverse(f1())(x));

  Witness id{PLCircleMap::identity(), {"involution", "reverses"}, {}};
  const auto r = verify_witness(PLCircleMap::rotation(q(1, 2)), id);
  CHECK(r.passed());
  CHECK(r.proof_grade);
}

TEST_CASE("line reversers have no fixed points") {
  // phi alternates u and u^-1 on consecutive unit intervals, so T_1 reverses
  // it; conjugating by alpha moves the pair onto (., T f~).
  const PLIntervalMap u({{q(0), q(0)}, {q(1, 3), q(1, 2)}, {q(1), q(1)}});
  const PLIntervalMap ui = u.inverse();
  auto phi = [&](const Rational& x) {
    const Integer k = floor(x);
    const Rational t = x - k;
    return Rational(k + (k % 2 == 0 ? u(t) : ui(t)));
  };
  auto phi_inv = [&](const Rational& y) {
    const Integer k = floor(y);
    const Rational t = y - k;
    return Rational(k + (k % 2 == 0 ? ui(t) : u(t)));
  };
  for (const auto& f : {f1(), g1()}) {
    const auto rl = reverse_lift(f);
    const LiftMap& H = rl.tf;
    auto F = [&](const Rational& x) { return rl.alpha.inverse_at(phi(rl.alpha(x))); };
    auto Finv = [&](const Rational& x) { return rl.alpha.inverse_at(phi_inv(rl.alpha(x))); };
    for (long k = -3; k <= 3; ++k) {
      const Rational p = rl.alpha.inverse_at(q(k));
      CHECK(F(p) == p);
    }
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
      const Rational x = q(static_cast<long>(rng() % 4001) - 2000, 500);
      CHECK(H(x) != x);
      CHECK(H(F(H.inverse_at(x))) == Finv(x));
    }
  }
}
