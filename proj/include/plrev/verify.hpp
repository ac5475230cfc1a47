#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plrev/lazymap.hpp"

namespace plrev {

using AnyMap = std::variant<PLCircleMap, LazyMap>;

Rational eval(const AnyMap& m, const Rational& x);
Rational eval_inverse(const AnyMap& m, const Rational& y);
int degree(const AnyMap& m);
LazyMap as_lazy(const AnyMap& m);

// lhs[0] o lhs[1] o ... = rhs[0] o rhs[1] o ...; an empty chain is the
// identity. Circle claims compare values mod 1; line claims are checked on
// the open `domain`.
struct Claim {
  std::string name;
  std::vector<AnyMap> lhs;
  std::vector<AnyMap> rhs;
  Space space = Space::Circle;
  std::optional<Interval> domain;
};

struct VerificationReport {
  std::string claim;
  std::size_t checked_points = 0;
  bool fundamental_domain_checked = false;
  bool all_exact = true;
  bool proof_grade = false;
  std::optional<Rational> counterexample;

  bool passed() const { return all_exact && !counterexample; }
};

Claim involution_claim(const AnyMap& h);
Claim reverses_claim(const AnyMap& h, const PLCircleMap& f, long n = 1);
Claim product_claim(const std::vector<AnyMap>& factors, const PLCircleMap& f);
Claim equal_claim(const AnyMap& f, const AnyMap& g);

// Exact symbolic comparison when every map is finite; otherwise exact
// checks at break points, seams, fundamental-domain points and 128
// pseudo-random rationals drawn from a fixed seed.
VerificationReport sample_verify(const Claim& claim,
                                 const std::vector<Rational>& extra_points = {});

// Conjunction of several reports under one claim name.
VerificationReport combine(const std::string& claim,
                           const std::vector<VerificationReport>& parts);

}  // namespace plrev
