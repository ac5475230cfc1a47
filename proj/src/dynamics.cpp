#include "plrev/dynamics.hpp"

#include <algorithm>

namespace plrev {

namespace {

struct Segment {
  Rational lo;
  Rational hi;
};

// Solutions of f~(x) - x = k over one period, as closed segments of [0, 1].
std::vector<Segment> level_segments(const PLCircleMap& f, const Integer& k) {
  const auto& vs = f.vertices();
  const std::size_t n = vs.size();
  std::vector<Segment> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational x0 = vs[i].x;
    const Rational x1 = i + 1 < n ? vs[i + 1].x : Rational(1);
    const Rational d0 = vs[i].y - x0 - k;
    const Rational d1 = (i + 1 < n ? vs[i + 1].y : vs[0].y + f.degree()) - x1 - k;
    if (d0 == 0 && d1 == 0) {
      out.push_back({x0, x1});
    } else if (sgn(d0) * sgn(d1) <= 0) {
      Rational x = x0 + (-d0) * (x1 - x0) / (d1 - d0);
      out.push_back({x, x});
    }
  }
  return out;
}

FixedSet assemble(std::vector<Segment> segs, const Integer& level) {
  FixedSet fs;
  fs.level = level;
  if (segs.empty()) return fs;
  std::sort(segs.begin(), segs.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  std::vector<Segment> merged{segs.front()};
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, segs[i].hi);
    else
      merged.push_back(segs[i]);
  }
  if (merged.size() == 1 && merged[0].lo == 0 && merged[0].hi == 1) {
    fs.whole_circle = true;
    return fs;
  }
  // x = 1 is x = 0 on the circle.
  if (merged.back().lo == 1) {
    merged.pop_back();
    if (merged.empty() || merged.front().lo != 0)
      merged.insert(merged.begin(), Segment{Rational(0), Rational(0)});
  } else if (merged.back().hi == 1 && merged.front().lo == 0 &&
             merged.size() > 1) {
    merged.back().hi = merged.front().hi + 1;
    merged.erase(merged.begin());
  }
  std::sort(merged.begin(), merged.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  for (auto& s : merged) fs.components.push_back({s.lo, s.hi});
  return fs;
}

}  // namespace

FixedSet fixed_set(const PLCircleMap& f) {
  if (f.is_identity()) {
    FixedSet fs;
    fs.whole_circle = true;
    return fs;
  }
  if (f.degree() == -1) {
    std::vector<Segment> segs = level_segments(f, 0);
    for (auto& s : level_segments(f, -1)) segs.push_back(s);
    return assemble(std::move(segs), 0);
  }
  // d(x) = f~(x) - x is periodic with range narrower than 1, so at most one
  // integer level is attained.
  Rational lo = f.vertices()[0].y;
  Rational hi = lo;
  for (const auto& v : f.vertices()) {
    const Rational d = v.y - v.x;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  const Integer k = ceil(lo);
  if (Rational(k) > hi) return assemble({}, k);
  return assemble(level_segments(f, k), k);
}

SignatureWord signature_word(const PLCircleMap& f) {
  if (f.degree() != 1)
    throw Error(ErrorCode::WrongDegree, "signature needs a degree +1 map");
  const FixedSet fs = fixed_set(f);
  SignatureWord w;
  if (fs.whole_circle) {
    w.identity = true;
    return w;
  }
  if (fs.empty()) throw Error(ErrorCode::NoFixedPoint, "map has no fixed point");
  w.components = fs.components;
  w.level = fs.level;
  const std::size_t m = w.components.size();
  for (std::size_t i = 0; i < m; ++i) {
    SignedInterval I;
    I.lo = w.components[i].b;
    I.hi = i + 1 < m ? w.components[i + 1].a : w.components[0].a + 1;
    I.sign = delta(f, fs.level, I.lo / 2 + I.hi / 2);
    w.intervals.push_back(I);
  }
  return w;
}

int delta(const PLCircleMap& f, const Integer& level, const Rational& x) {
  return sgn(f.lift(x) - x - level);
}

int delta(const PLCircleMap& f, const Rational& x) {
  const FixedSet fs = fixed_set(f);
  if (fs.empty()) throw Error(ErrorCode::NoFixedPoint, "map has no fixed point");
  return delta(f, fs.level, x);
}

PLCircleMap power(const PLCircleMap& f, long n) {
  PLCircleMap base = n < 0 ? inverse(f) : f;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  PLCircleMap result;
  while (e > 0) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

PowerBound n_f(const PLCircleMap& f, int max_n) {
  PowerBound out;
  out.bound = max_n;
  PLCircleMap g = f;
  for (int n = 1; n <= max_n; ++n) {
    if (!fixed_set(g).empty()) {
      out.value = n;
      return out;
    }
    g = compose(f, g);
  }
  return out;
}

RotationNumberResult rotation_number_rational(const PLCircleMap& f, int max_q) {
  RotationNumberResult out;
  out.bound = max_q;
  PLCircleMap g = f;
  for (int q = 1; q <= max_q; ++q) {
    const FixedSet fs = fixed_set(g);
    if (!fs.empty()) {
      const Rational x = fs.whole_circle ? Rational(0) : fs.components[0].a;
      Rational y = x;
      for (int i = 0; i < q; ++i) y = f.lift(y);
      out.rho = frac((y - x) / q);
      out.periodic_point = x;
      return out;
    }
    g = compose(f, g);
  }
  return out;
}

bool is_involution(const PLCircleMap& f) { return compose(f, f).is_identity(); }

std::optional<std::size_t> interval_containing(const SignatureWord& w,
                                               const Rational& x) {
  for (std::size_t i = 0; i < w.intervals.size(); ++i) {
    const auto& I = w.intervals[i];
    Rational t = frac(x);
    if (t <= I.lo) t += 1;
    if (I.lo < t && t < I.hi) return i;
  }
  return std::nullopt;
}

CirclePoint common_fixed_point(const PLCircleMap& f, const PLCircleMap& g) {
  if (compose(f, g) != compose(g, f))
    throw Error(ErrorCode::NotCommuting, "maps do not commute");
  const FixedSet ff = fixed_set(f);
  const FixedSet fg = fixed_set(g);
  if (ff.empty() || fg.empty())
    throw Error(ErrorCode::EmptyFixedSet, "a fixed set is empty");
  const Rational x = fg.whole_circle ? Rational(0) : fg.components[0].a;
  if (f(x) == x) return CirclePoint(x);
  const SignatureWord w = signature_word(f);
  const std::size_t i = *interval_containing(w, x);
  const auto& I = w.intervals[i];
  return CirclePoint(I.sign > 0 ? I.hi : I.lo);
}

}  // namespace plrev
