#include "plrev/rational.hpp"

#include <cctype>

#include "plrev/error.hpp"

namespace plrev {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::DuplicateX: return "DuplicateX";
    case ErrorCode::NotArcInvariantImage: return "NotArcInvariantImage";
    case ErrorCode::DegenerateInterval: return "DegenerateInterval";
    case ErrorCode::NoFixedPoint: return "NoFixedPoint";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::HasFixedPoint: return "HasFixedPoint";
    case ErrorCode::DirectionMismatch: return "DirectionMismatch";
    case ErrorCode::SeamMismatch: return "SeamMismatch";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::EmptyFixedSet: return "EmptyFixedSet";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotAReverser: return "NotAReverser";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text, bool require_canonical) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view digits = num;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits) || !all_digits(den))
    throw Error(ErrorCode::ParseError,
                "malformed rational '" + std::string(text) + "'");
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0)
    throw Error(ErrorCode::ParseError,
                "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  if (require_canonical && to_string(q) != text)
    throw Error(ErrorCode::ParseError,
                "rational '" + std::string(text) + "' is not in lowest terms");
  return q;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

}  // namespace plrev
