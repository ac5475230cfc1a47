#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plrev/dynamics.hpp"
#include "plrev/lazymap.hpp"
#include "plrev/verify.hpp"

namespace plrev {

enum class Verdict { Yes, No, Unknown };
std::string_view to_string(Verdict v);

struct Witness {
  AnyMap map;
  std::vector<std::string> claims;  // "involution", "reverses", ...
  VerificationReport report;
};

struct Decision {
  std::string question;
  Verdict verdict = Verdict::No;
  std::string reason;
  std::optional<Witness> witness;
  // Orientation-preserving involution reversing f, when one is produced
  // next to the main witness.
  std::optional<Witness> plus_witness;
  std::optional<int> bound;
};

// Block pairings of a signature word. Blocks are numbered C_0 = 0, I_0 = 1,
// C_1 = 2, ...; a reflection axis c sends block p to c - p (mod 2m).
struct Pairing {
  enum class Kind { HalfShift, Reflection } kind;
  std::size_t axis = 0;  // Reflection only
};
bool admits_half_shift(const SignatureWord& w);
std::vector<std::size_t> reflection_axes(const SignatureWord& w);

Decision decide_strongly_reversible_plplus(const PLCircleMap& f);
Decision decide_strongly_reversible_by_minus(const PLCircleMap& f, int max_q);
Decision decide_reversible_plplus(const PLCircleMap& f);
Decision decide_reversible_minus(const PLCircleMap& f);
Decision decide_reversible_pl(const PLCircleMap& f, int max_q);

// Fixed-point-free orientation-preserving involution tau with
// tau f tau = f^-1, for f whose word admits the half shift.
LazyMap half_shift_reverser(const PLCircleMap& f);
// Orientation-reversing involution reversing g across reflection axis c.
LazyMap reflection_reverser(const PLCircleMap& g, std::size_t axis);
// Orientation-reversing involution of [lo, hi] reversing an increasing g
// that fixes both endpoints; PreconditionFailed when no symmetric pairing
// of its fixed-set word exists.
LazyMap reflect_interval(const PLIntervalMap& g);

AnyMap transfer_reverser_from_power(const PLCircleMap& f, long n, const AnyMap& tau);
AnyMap make_involution_from_minus_reverser(const PLCircleMap& f, const PLCircleMap& h);
LazyMap signature_conjugator(const PLCircleMap& f, const PLCircleMap& g);
PLCircleMap conjugate_involution_to_rotation(const PLCircleMap& tau);
PLCircleMap conjugate_involution_to_reflection(const PLCircleMap& tau);

VerificationReport verify_witness(const PLCircleMap& f, const Witness& w);
Witness make_witness(const PLCircleMap& f, const AnyMap& map,
                     std::vector<std::string> claims);

}  // namespace plrev
