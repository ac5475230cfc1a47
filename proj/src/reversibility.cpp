#include "plrev/reversibility.hpp"

namespace plrev {

namespace {

const char* kPlus = "pl+";
const char* kFull = "pl";

Decision yes(std::string question, std::string reason, Witness w) {
  Decision d;
  d.question = std::move(question);
  d.verdict = Verdict::Yes;
  d.reason = std::move(reason);
  d.witness = std::move(w);
  return d;
}

Decision no(std::string question, std::string reason) {
  Decision d;
  d.question = std::move(question);
  d.verdict = Verdict::No;
  d.reason = std::move(reason);
  return d;
}

std::string question(const char* notion, const char* group) {
  return std::string(notion) + ":" + group;
}

void require_degree(const PLCircleMap& f, int deg) {
  if (f.degree() != deg)
    throw Error(ErrorCode::WrongDegree, deg > 0 ? "expected an orientation-preserving map"
                                                : "expected an orientation-reversing map");
}

const std::vector<std::string> kPlusClaims{"involution", "reverses", "degree+1"};
const std::vector<std::string> kMinusClaims{"involution", "reverses", "degree-1"};

Witness identity_witness(const PLCircleMap& f) {
  return make_witness(f, PLCircleMap::identity(), kPlusClaims);
}

VerificationReport degree_report(const AnyMap& m, int expected, const std::string& name) {
  VerificationReport r;
  r.claim = name;
  r.proof_grade = true;
  if (degree(m) != expected) r.counterexample = Rational(0);
  return r;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

VerificationReport verify_witness(const PLCircleMap& f, const Witness& w) {
  std::vector<VerificationReport> parts;
  for (const auto& c : w.claims) {
    if (c == "involution") {
      parts.push_back(sample_verify(involution_claim(w.map)));
    } else if (c == "reverses") {
      parts.push_back(sample_verify(reverses_claim(w.map, f)));
    } else if (c.rfind("reverses-power-", 0) == 0) {
      parts.push_back(sample_verify(reverses_claim(w.map, f, std::stol(c.substr(15)))));
    } else if (c == "degree+1" || c == "degree-1") {
      parts.push_back(degree_report(w.map, c == "degree+1" ? 1 : -1, c));
    } else {
      throw Error(ErrorCode::PreconditionFailed, "unknown witness claim " + c);
    }
  }
  return combine("witness", parts);
}

Witness make_witness(const PLCircleMap& f, const AnyMap& map,
                     std::vector<std::string> claims) {
  Witness w{map, std::move(claims), {}};
  w.report = verify_witness(f, w);
  return w;
}

Decision decide_strongly_reversible_plplus(const PLCircleMap& f) {
  require_degree(f, 1);
  const std::string q = question("strongly-reversible", kPlus);
  if (f.is_identity()) return yes(q, "identity", identity_witness(f));
  if (is_involution(f)) return yes(q, "f-squared-identity", identity_witness(f));
  if (fixed_set(f).empty()) return no(q, "no-fixed-point");
  const SignatureWord w = signature_word(f);
  if (!admits_half_shift(w)) return no(q, "word-half-shift");
  return yes(q, "word-half-shift", make_witness(f, half_shift_reverser(f), kPlusClaims));
}

Decision decide_strongly_reversible_by_minus(const PLCircleMap& f, int max_q) {
  require_degree(f, 1);
  const std::string q = question("strongly-reversible-by-minus", kFull);
  const PLCircleMap s = PLCircleMap::reflection();
  if (f.is_identity()) return yes(q, "identity", make_witness(f, s, kMinusClaims));
  const PowerBound nf = n_f(f, max_q);
  if (!nf.value) {
    Decision d = no(q, "n_f-bound");
    d.verdict = Verdict::Unknown;
    d.bound = nf.bound;
    return d;
  }
  const long n = *nf.value;
  const PLCircleMap g = power(f, n);
  if (g.is_identity()) {
    return yes(q, "power-identity",
               make_witness(f, transfer_reverser_from_power(f, n, s), kMinusClaims));
  }
  const auto axes = reflection_axes(signature_word(g));
  if (axes.empty()) return no(q, "word-reflection");
  const LazyMap tau0 = reflection_reverser(g, axes.front());
  return yes(q, "word-reflection",
             make_witness(f, transfer_reverser_from_power(f, n, tau0), kMinusClaims));
}

Decision decide_reversible_plplus(const PLCircleMap& f) {
  require_degree(f, 1);
  const std::string q = question("reversible", kPlus);
  Decision d;
  if (f.is_identity() || is_involution(f) || !fixed_set(f).empty()) {
    d = decide_strongly_reversible_plplus(f);
  } else if (!fixed_set(power(f, 2)).empty()) {
    // rho(f) = 1/2: reversible in PL+ iff strongly reversible by an
    // orientation-reversing involution.
    d = decide_strongly_reversible_by_minus(f, 2);
  } else {
    d = no(q, "rho-not-0-or-half");
  }
  d.question = q;
  return d;
}

Decision decide_reversible_minus(const PLCircleMap& f) {
  require_degree(f, -1);
  const std::string q = question("reversible", kFull);
  if (is_involution(f)) {
    Decision d = yes(q, "f-squared-identity", make_witness(f, f, kMinusClaims));
    d.plus_witness = identity_witness(f);
    return d;
  }
  const auto fix = fixed_set(f).components;
  const Rational a = fix.at(0).a;
  const Rational b = fix.at(1).a;
  const PLCircleMap f2 = power(f, 2);
  const Interval ab{a, b};
  const PLIntervalMap g = restrict(f2, ab).shifted(0, a - f2.lift(a));
  std::optional<LazyMap> tau;
  try {
    tau = reflect_interval(g);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionFailed) throw;
    return no(q, "word-reflection");
  }
  // mu = tau on [a, b] and f^-1 tau f^-1 on [b, a + 1]
  const PLCircleMap finv = inverse(f);
  const Rational shift = b - finv.lift(b);
  const LazyMap F(LiftMap{finv, shift.get_num()});
  const Interval ba{b, a + 1};
  const LazyMap mu = LazyMap::glue(
      Space::Circle, {map_piece(ab, *tau, ab, -1),
                      map_piece(ba, LazyMap::compose({F, *tau, F}), ba, -1)});
  Decision d = yes(q, "word-reflection", make_witness(f, mu, kMinusClaims));
  d.plus_witness = make_witness(f, LazyMap::compose({LazyMap(f), mu}), kPlusClaims);
  return d;
}

Decision decide_reversible_pl(const PLCircleMap& f, int max_q) {
  const std::string q = question("reversible", kFull);
  Decision d;
  if (f.degree() < 0) {
    d = decide_reversible_minus(f);
  } else {
    d = decide_reversible_plplus(f);
    if (d.verdict != Verdict::Yes) d = decide_strongly_reversible_by_minus(f, max_q);
  }
  d.question = q;
  return d;
}

}  // namespace plrev
