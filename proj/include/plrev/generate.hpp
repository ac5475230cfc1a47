#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plrev/plmap.hpp"

namespace plrev {

enum class RandomKind { Map, Involution, ReversiblePlus, ReversibleMinus };

RandomKind parse_random_kind(const std::string& s);
std::string to_string(RandomKind k);

struct RandomSpec {
  RandomKind kind = RandomKind::Map;
  int degree = 1;         // Map and Involution only
  int breaks = 4;         // target vertex count
  long denom_bound = 64;  // bound on sampled coordinates' denominators
  std::uint64_t seed = 1;
};

struct RandomInstance {
  PLCircleMap map;
  // Reversible kinds: two involutions whose product is `map`.
  std::vector<PLCircleMap> certificate;
};

// Deterministic per seed on every platform: only raw mt19937_64 output is
// used, never the implementation-defined distributions.
RandomInstance generate(const RandomSpec& spec);

// k distinct rationals in the open interval (lo, hi), sorted, with
// denominators at most `denom_bound` whenever such points exist.
std::vector<Rational> random_points(std::mt19937_64& rng, const Rational& lo,
                                    const Rational& hi, std::size_t k, long denom_bound);

PLCircleMap random_circle_map(std::mt19937_64& rng, int degree, int breaks, long denom_bound);

// Degree +1: fixed-point-free, swapping [a, b] and [b, a + 1].
// Degree -1: fixed points a and b.
PLCircleMap random_involution(std::mt19937_64& rng, int degree, int breaks, long denom_bound);
PLCircleMap random_involution_fixing(std::mt19937_64& rng, const Rational& a, int breaks,
                                     long denom_bound);

}  // namespace plrev
