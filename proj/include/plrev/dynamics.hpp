#pragma once

#include <optional>
#include <vector>

#include "plrev/plmap.hpp"

namespace plrev {

// A component of a fixed set, in lift coordinates: a in [0, 1) and
// a <= b < a + 1. Points have a == b.
struct FixedComponent {
  Rational a;
  Rational b;

  bool is_arc() const { return a != b; }
  friend bool operator==(const FixedComponent&, const FixedComponent&) = default;
};

struct FixedSet {
  std::vector<FixedComponent> components;  // sorted by a
  bool whole_circle = false;
  // For degree +1: the integer k with f~(x) = x + k on the fixed set.
  Integer level = 0;

  bool empty() const { return !whole_circle && components.empty(); }
};

// Open interval between consecutive fixed components; hi may exceed 1.
struct SignedInterval {
  Rational lo;
  Rational hi;
  int sign = 0;

  friend bool operator==(const SignedInterval&, const SignedInterval&) = default;
};

// Cyclic word C_0 I_0 C_1 I_1 ... C_{m-1} I_{m-1}; interval I_i runs from
// C_i to C_{i+1}.
struct SignatureWord {
  bool identity = false;
  std::vector<FixedComponent> components;
  std::vector<SignedInterval> intervals;
  Integer level = 0;

  std::size_t m() const { return components.size(); }
};

struct RotationNumberResult {
  std::optional<Rational> rho;
  std::optional<Rational> periodic_point;  // certificate for rho
  int bound = 0;

  bool known() const { return rho.has_value(); }
};

struct PowerBound {
  std::optional<int> value;
  int bound = 0;
};

FixedSet fixed_set(const PLCircleMap& f);
SignatureWord signature_word(const PLCircleMap& f);

// Delta_f at a point: +1, -1, or 0 on Fix(f). f has degree +1 and a fixed
// point.
int delta(const PLCircleMap& f, const Rational& x);
int delta(const PLCircleMap& f, const Integer& level, const Rational& x);

PLCircleMap power(const PLCircleMap& f, long n);
PowerBound n_f(const PLCircleMap& f, int max_n);
RotationNumberResult rotation_number_rational(const PLCircleMap& f, int max_q);
bool is_involution(const PLCircleMap& f);
CirclePoint common_fixed_point(const PLCircleMap& f, const PLCircleMap& g);

// Index of the word interval whose open arc contains x, if any.
std::optional<std::size_t> interval_containing(const SignatureWord& w,
                                               const Rational& x);

}  // namespace plrev
