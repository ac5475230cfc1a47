#include "plrev/verify.hpp"

#include <algorithm>
#include <random>

#include "plrev/dynamics.hpp"

namespace plrev {

namespace {

constexpr std::uint64_t kSampleSeed = 0x5eed2024;
constexpr int kRandomSamples = 128;

bool all_finite(const std::vector<AnyMap>& chain) {
  return std::all_of(chain.begin(), chain.end(), [](const AnyMap& m) {
    return std::holds_alternative<PLCircleMap>(m);
  });
}

PLCircleMap compose_chain(const std::vector<AnyMap>& chain) {
  PLCircleMap out;
  for (const auto& m : chain) out = compose(out, std::get<PLCircleMap>(m));
  return out;
}

Rational apply_chain(const std::vector<AnyMap>& chain, const Rational& x) {
  Rational r = x;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) r = eval(*it, r);
  return r;
}

std::vector<Rational> random_points(const Claim& c) {
  std::mt19937_64 rng(kSampleSeed);
  std::vector<Rational> out;
  for (int i = 0; i < kRandomSamples; ++i) {
    const long den = static_cast<long>(rng() % 1000) + 2;
    const long num = static_cast<long>(rng() % (den - 1)) + 1;
    const Rational t = make_rational(num, den);
    if (c.domain) {
      out.push_back(c.domain->lo + c.domain->length() * t);
    } else if (c.space == Space::Circle) {
      out.push_back(t);
    } else {
      out.push_back(16 * t - 8);
    }
  }
  return out;
}

void add_probe_points(const AnyMap& m, std::vector<Rational>& pts,
                      std::vector<Rational>& fd_pts) {
  if (const auto* f = std::get_if<PLCircleMap>(&m)) {
    for (const auto& v : f->vertices()) pts.push_back(v.x);
    return;
  }
  const ProbePoints p = probe_points(std::get<LazyMap>(m));
  pts.insert(pts.end(), p.breaks.begin(), p.breaks.end());
  pts.insert(pts.end(), p.seams.begin(), p.seams.end());
  fd_pts.insert(fd_pts.end(), p.fundamental_domain.begin(), p.fundamental_domain.end());
}

bool in_claim_domain(const Claim& c, const Rational& x) {
  return !c.domain || c.domain->contains_open(x);
}

}  // namespace

Rational eval(const AnyMap& m, const Rational& x) {
  return std::visit([&](const auto& f) { return Rational(f(x)); }, m);
}

Rational eval_inverse(const AnyMap& m, const Rational& y) {
  return std::visit([&](const auto& f) { return Rational(f.inverse_at(y)); }, m);
}

int degree(const AnyMap& m) {
  if (const auto* f = std::get_if<PLCircleMap>(&m)) return f->degree();
  return std::get<LazyMap>(m).orientation();
}

LazyMap as_lazy(const AnyMap& m) {
  if (const auto* f = std::get_if<PLCircleMap>(&m)) return LazyMap(*f);
  return std::get<LazyMap>(m);
}

Claim involution_claim(const AnyMap& h) {
  return {"involution", {h, h}, {}, Space::Circle, std::nullopt};
}

Claim reverses_claim(const AnyMap& h, const PLCircleMap& f, long n) {
  const PLCircleMap fn = power(f, n);
  Claim c{"reverses", {h, fn, h}, {inverse(fn)}, Space::Circle, std::nullopt};
  if (n != 1) c.name = "reverses-power-" + std::to_string(n);
  return c;
}

Claim product_claim(const std::vector<AnyMap>& factors, const PLCircleMap& f) {
  return {"product", factors, {f}, Space::Circle, std::nullopt};
}

Claim equal_claim(const AnyMap& f, const AnyMap& g) {
  return {"equal", {f}, {g}, Space::Circle, std::nullopt};
}

VerificationReport sample_verify(const Claim& claim,
                                 const std::vector<Rational>& extra_points) {
  VerificationReport report;
  report.claim = claim.name;

  if (claim.space == Space::Circle && all_finite(claim.lhs) && all_finite(claim.rhs)) {
    const PLCircleMap a = compose_chain(claim.lhs);
    const PLCircleMap b = compose_chain(claim.rhs);
    report.proof_grade = true;
    if (a == b) return report;
    report.all_exact = true;
    // Two distinct PL maps differ at a vertex of one of them or between
    // consecutive vertices.
    std::vector<Rational> xs = vertex_positions(a);
    for (auto& x : vertex_positions(b)) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Rational next = i + 1 < n ? xs[i + 1] : xs[0] + 1;
      for (const Rational& x : {xs[i], Rational((xs[i] + next) / 2)}) {
        ++report.checked_points;
        if (a(x) != b(x) || a.degree() != b.degree()) {
          report.counterexample = frac(x);
          return report;
        }
      }
    }
    report.counterexample = Rational(0);
    return report;
  }

  std::vector<Rational> pts = extra_points;
  std::vector<Rational> fd_pts;
  for (const auto& m : claim.lhs) add_probe_points(m, pts, fd_pts);
  for (const auto& m : claim.rhs) add_probe_points(m, pts, fd_pts);
  for (auto& x : random_points(claim)) pts.push_back(x);

  auto check = [&](const Rational& x) -> bool {
    if (!in_claim_domain(claim, x)) return true;
    ++report.checked_points;
    Rational a, b;
    try {
      a = apply_chain(claim.lhs, x);
      b = apply_chain(claim.rhs, x);
    } catch (const Error&) {
      report.all_exact = false;
      report.counterexample = x;
      return false;
    }
    const bool same = claim.space == Space::Circle ? frac(a) == frac(b) : a == b;
    if (!same) {
      report.counterexample = claim.space == Space::Circle ? frac(x) : x;
      return false;
    }
    return true;
  };

  for (const auto& x : pts)
    if (!check(x)) return report;
  for (const auto& x : fd_pts)
    if (!check(x)) return report;
  report.fundamental_domain_checked = !fd_pts.empty();
  return report;
}

VerificationReport combine(const std::string& claim,
                           const std::vector<VerificationReport>& parts) {
  VerificationReport out;
  out.claim = claim;
  out.proof_grade = !parts.empty();
  out.fundamental_domain_checked = false;
  for (const auto& p : parts) {
    out.checked_points += p.checked_points;
    out.all_exact = out.all_exact && p.all_exact;
    out.proof_grade = out.proof_grade && p.proof_grade;
    out.fundamental_domain_checked = out.fundamental_domain_checked || p.fundamental_domain_checked;
    if (p.counterexample && !out.counterexample) out.counterexample = p.counterexample;
  }
  return out;
}

}  // namespace plrev
