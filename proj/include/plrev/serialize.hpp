#pragma once

#include <string>

#include <json.hpp>

#include "plrev/factorize.hpp"

namespace plrev {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json rational_json(const Rational& q);
// Copy of `body` with `format_version` as its first field.
Json versioned(const Json& body);

// Map exchange format: {"format_version", "degree", "vertices": [{"x","y"}]}.
Json map_to_json(const PLCircleMap& f);
// Rejects non-canonical data unless `normalize` is set. Errors are
// ParseError with the offending field path in the message.
PLCircleMap map_from_json(const Json& doc, bool normalize = false);

Json interval_map_to_json(const PLIntervalMap& m);
PLIntervalMap interval_map_from_json(const Json& doc);

// Expression tree with node kinds finite | compose | inverse | fd | glue.
Json lazy_to_json(const LazyMap& m);
LazyMap lazy_from_json(const Json& doc);

// Finite circle maps use the map format, everything else the tree format.
Json any_to_json(const AnyMap& m);
AnyMap any_from_json(const Json& doc, bool normalize = false);

Json word_to_json(const SignatureWord& w);
Json fixed_set_to_json(const FixedSet& s);
Json rho_to_json(const RotationNumberResult& r);
Json report_to_json(const VerificationReport& r);
Json witness_to_json(const Witness& w);
Json decision_to_json(const Decision& d);
Json factorization_to_json(const Factorization& f);

// Parses text, mapping syntax errors to ParseError with line and column.
Json parse_document(const std::string& text);

}  // namespace plrev
