#pragma once

#include <random>

#include "plrev/dynamics.hpp"

namespace plrev::testing {

inline Rational q(long p, long d = 1) { return make_rational(p, d); }

inline PLCircleMap f1() { return PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 2), q(3, 4)}}); }
inline PLCircleMap g1() {
  return PLCircleMap::normalize(
      1, {{q(0), q(0)}, {q(1, 4), q(3, 8)}, {q(1, 2), q(1, 2)}, {q(3, 4), q(5, 8)}});
}
inline PLCircleMap h0() {
  return PLCircleMap::normalize(1, {{q(0), q(0)}, {q(1, 3), q(1, 5)}, {q(3, 4), q(2, 3)}});
}
inline PLCircleMap s() { return PLCircleMap::reflection(); }
inline PLCircleMap conj(const PLCircleMap& phi, const PLCircleMap& t) {
  return compose(phi, compose(t, inverse(phi)));
}

// Random canonical-ish map: k vertices with random rational gaps.
inline PLCircleMap random_map(std::mt19937_64& rng, int deg, int k) {
  auto gaps = [&](int n) {
    std::vector<Rational> g;
    Rational total = 0;
    for (int i = 0; i < n; ++i) {
      g.push_back(q(static_cast<long>(rng() % 7) + 1, static_cast<long>(rng() % 5) + 1));
      total += g.back();
    }
    for (auto& x : g) x /= total;
    return g;
  };
  const auto dx = gaps(k);
  const auto dy = gaps(k);
  Rational x = 0;
  Rational y = q(static_cast<long>(rng() % 16), 16);
  std::vector<Vertex> vs;
  for (int i = 0; i < k; ++i) {
    vs.push_back({x, y});
    x += dx[i];
    y += deg * dy[i];
  }
  return PLCircleMap::normalize(deg, vs);
}

// Pairing oracles over abstract circular words.

struct ToyWord {
  std::vector<bool> arc;   // component types
  std::vector<int> signs;  // interval signs
};

inline SignatureWord realize(const ToyWord& t) {
  SignatureWord w;
  const std::size_t m = t.arc.size();
  const Rational step = Rational(1) / Rational(static_cast<long>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Rational a = step * static_cast<long>(i);
    const Rational b = t.arc[i] ? a + step / 4 : a;
    w.components.push_back({a, b});
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Rational next = i + 1 < m ? w.components[i + 1].a : Rational(1);
    w.intervals.push_back({w.components[i].b, next, t.signs[i]});
  }
  return w;
}

// Every cyclic shift k: the shift must be an involution of the word and
// negate every sign.
inline bool brute_half_shift(const ToyWord& t) {
  const std::size_t m = t.arc.size();
  for (std::size_t k = 1; k < m; ++k) {
    if ((2 * k) % m != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      ok = t.arc[(i + k) % m] == t.arc[i] && t.signs[(i + k) % m] == -t.signs[i];
    }
    if (ok) return true;
  }
  return false;
}

// Component i goes to c - i, interval i to c - 1 - i.
inline std::size_t brute_reflections(const ToyWord& t) {
  const long m = static_cast<long>(t.arc.size());
  std::size_t count = 0;
  for (long c = 0; c < m; ++c) {
    bool ok = true;
    for (long i = 0; i < m && ok; ++i) {
      const long j = ((c - i) % m + m) % m;
      const long k = ((c - 1 - i) % m + m) % m;
      ok = t.arc[j] == t.arc[i] && t.signs[k] == t.signs[i];
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace plrev::testing
