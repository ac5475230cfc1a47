#pragma once

#include <optional>
#include <vector>

#include "plrev/reversibility.hpp"

namespace plrev {

// Continuous piecewise-linear function of one variable, vertices sorted by x.
struct PLFunction {
  std::vector<Vertex> vertices;

  Rational operator()(const Rational& x) const;
  Interval domain() const { return {vertices.front().x, vertices.back().x}; }
};

PLFunction to_function(const PLIntervalMap& m);
PLFunction constant_function(const Interval& domain, const Rational& c);
PLFunction pl_min(const PLFunction& a, const PLFunction& b);
PLFunction pl_max(const PLFunction& a, const PLFunction& b);

// lower < u < upper on the open domain; forced values at the ends must lie
// in [lower, upper] there.
struct EnvelopeSpec {
  Interval domain;
  PLFunction lower;
  PLFunction upper;
  std::optional<Rational> value_lo;
  std::optional<Rational> value_hi;
  int orientation = 1;
};

PLIntervalMap pl_strictly_between(const EnvelopeSpec& spec);

// Decreasing involution sigma of [0, 1] with sigma > g and sigma > g^-1 on
// (0, 1), for a decreasing g of [0, 1] onto itself.
PLIntervalMap strictly_above_involution(const PLIntervalMap& g);

struct Factorization {
  std::vector<Witness> factors;  // f = factors[0] o factors[1] o ...
  VerificationReport product_check;
  // Orientation-preserving case: Fix(tau f) = {x, y}.
  std::optional<Rational> x;
  std::optional<Rational> y;
};

Factorization factor_three_involutions_plus(const PLCircleMap& f);
Factorization factor_three_involutions_minus(const PLCircleMap& f);
Factorization factor_three_involutions(const PLCircleMap& f);

}  // namespace plrev
