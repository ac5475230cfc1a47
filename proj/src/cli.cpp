#include "plrev/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "plrev/generate.hpp"
#include "plrev/serialize.hpp"

namespace plrev {

namespace {

struct Options {
  int max_period = 64;
  std::uint64_t seed = 1;
  std::string format = "json";
  bool normalize = false;
};

struct Result {
  Json doc;
  int code = kExitVerdict;
};

class Documents {
 public:
  explicit Documents(std::istream& in) : in_(in) {}

  Json load(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return parse_document(arg);
    std::stringstream ss;
    if (arg == "-") {
      if (stdin_used_) throw Error(ErrorCode::ParseError, "standard input used twice");
      stdin_used_ = true;
      ss << in_.rdbuf();
    } else {
      std::ifstream file(arg);
      if (!file) throw Error(ErrorCode::ParseError, "cannot read '" + arg + "'");
      ss << file.rdbuf();
    }
    try {
      return parse_document(ss.str());
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, arg + ": " + e.message());
    }
  }

 private:
  std::istream& in_;
  bool stdin_used_ = false;
};

Result verdict_result(const Decision& d) {
  return {decision_to_json(d), d.verdict == Verdict::Unknown ? kExitUnknown : kExitVerdict};
}

Decision decide(const PLCircleMap& f, const std::string& question, const std::string& group,
                int max_period) {
  const std::string q = question + ":" + group;
  Decision d;
  if (question == "reversible" && group == "pl+") {
    d = decide_reversible_plplus(f);
  } else if (question == "reversible" && group == "pl") {
    d = decide_reversible_pl(f, max_period);
  } else if (question == "strongly-reversible" && group == "pl+") {
    d = decide_strongly_reversible_plplus(f);
  } else if (question == "strongly-reversible" && group == "pl") {
    if (f.degree() < 0) {
      d = decide_reversible_minus(f);
    } else {
      d = decide_strongly_reversible_plplus(f);
      if (d.verdict != Verdict::Yes) d = decide_strongly_reversible_by_minus(f, max_period);
    }
  } else if (question == "strongly-reversible-by-minus" && group == "pl") {
    d = decide_strongly_reversible_by_minus(f, max_period);
  } else {
    throw Error(ErrorCode::ParseError, "unsupported question '" + q + "'");
  }
  d.question = q;
  return d;
}

Result certify(const PLCircleMap& f, const Json& witness_doc, std::vector<std::string> claims,
               bool normalize) {
  const bool is_decision = witness_doc.is_object() && witness_doc.contains("verdict");
  const Json& map_doc = is_decision ? witness_doc.at("witness") : witness_doc;
  if (map_doc.is_null()) throw Error(ErrorCode::ParseError, "witness: no witness map");
  if (claims.empty() && is_decision) {
    for (const auto& c : witness_doc.at("claims")) claims.push_back(c.get<std::string>());
  }
  if (claims.empty()) claims.push_back("reverses");
  const Witness w{any_from_json(map_doc, normalize), claims, {}};
  const VerificationReport r = verify_witness(f, w);
  Json doc = versioned({{"claims", claims}, {"passed", r.passed()}});
  doc["verification"] = report_to_json(r);
  return {doc, r.passed() ? kExitVerdict : kExitCertifyFail};
}

void render_text(const Json& doc, std::ostream& out) {
  if (!doc.is_object()) {
    out << doc.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : doc.items()) {
    if (k == "format_version") continue;
    out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

Json error_doc(const std::string& kind, const std::string& message) {
  return versioned({{"error", kind}, {"message", message}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Exact toolkit for piecewise-linear circle homeomorphisms", "plrev"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--max-period", opt.max_period, "Bound for periodic-orbit searches")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for random");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--normalize", opt.normalize, "Accept non-canonical map data");

  std::string map_arg;
  std::vector<std::string> extra;
  long power_n = 1;
  std::string question = "reversible";
  std::string group = "pl";
  std::vector<std::string> claims;
  RandomSpec rspec;
  std::string rkind = "map";

  auto with_map = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("map", map_arg, "Map document: file, '-' or inline JSON")->required();
    return sub;
  };
  auto* eval_cmd = with_map("eval", "Evaluate a map at points");
  eval_cmd->add_option("points", extra, "Rational points")->required();
  auto* compose_cmd = with_map("compose", "Compose maps, rightmost applied first");
  compose_cmd->add_option("maps", extra, "Further maps")->required();
  with_map("inverse", "Inverse map");
  auto* power_cmd = with_map("power", "n-th iterate");
  power_cmd->add_option("-n,--n", power_n, "Exponent")->required();
  with_map("rotnum", "Rational rotation number");
  with_map("fixset", "Fixed set");
  with_map("word", "Signature word");
  auto* decide_cmd = with_map("decide", "Decide reversibility");
  decide_cmd->add_option("--question", question)
      ->check(CLI::IsMember({"reversible", "strongly-reversible", "strongly-reversible-by-minus"}));
  decide_cmd->add_option("--group", group)->check(CLI::IsMember({"pl", "pl+"}));
  with_map("factor", "Factor into involutions");
  auto* certify_cmd = with_map("certify", "Check a witness");
  certify_cmd->add_option("witness", extra, "Witness or decision document")->required()->expected(1);
  certify_cmd->add_option("--claim", claims, "involution | reverses | reverses-power-N | degree+1 | degree-1");
  auto* random_cmd = app.add_subcommand("random", "Generate a seeded random instance");
  random_cmd->add_option("--kind", rkind)
      ->check(CLI::IsMember({"map", "involution", "reversible-plus", "reversible-minus"}));
  random_cmd->add_option("--degree", rspec.degree)->check(CLI::IsMember({1, -1}));
  random_cmd->add_option("--breaks", rspec.breaks)->check(CLI::PositiveNumber);
  random_cmd->add_option("--denom-bound", rspec.denom_bound)->check(CLI::Range(2L, 1000000000L));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitVerdict : kExitInvalid;
  }

  Documents docs(in);
  Result result;
  try {
    auto map = [&](const std::string& arg) { return map_from_json(docs.load(arg), opt.normalize); };
    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "random") {
      rspec.kind = parse_random_kind(rkind);
      rspec.seed = opt.seed;
      const RandomInstance inst = generate(rspec);
      result.doc = map_to_json(inst.map);
      result.doc["generator"] = {{"kind", rkind},
                                 {"seed", rspec.seed},
                                 {"breaks", rspec.breaks},
                                 {"denom_bound", rspec.denom_bound}};
      if (!inst.certificate.empty()) {
        Json factors = Json::array();
        for (const auto& t : inst.certificate) factors.push_back(map_to_json(t));
        result.doc["certificate"] = {{"construction", "product-of-involutions"},
                                     {"factors", factors}};
      }
    } else if (verb == "eval") {
      const AnyMap m = any_from_json(docs.load(map_arg), opt.normalize);
      Json values = Json::array();
      for (const auto& p : extra) {
        const Rational x = parse_rational(p);
        values.push_back({{"x", to_string(x)}, {"y", to_string(eval(m, x))}});
      }
      result.doc = versioned({{"values", values}});
    } else if (verb == "compose") {
      PLCircleMap f = map(map_arg);
      for (const auto& a : extra) f = compose(f, map(a));
      result.doc = map_to_json(f);
    } else if (verb == "inverse") {
      result.doc = map_to_json(inverse(map(map_arg)));
    } else if (verb == "power") {
      result.doc = map_to_json(power(map(map_arg), power_n));
    } else if (verb == "rotnum") {
      const auto r = rotation_number_rational(map(map_arg), opt.max_period);
      result = {rho_to_json(r), r.known() ? kExitVerdict : kExitUnknown};
    } else if (verb == "fixset") {
      result.doc = fixed_set_to_json(fixed_set(map(map_arg)));
    } else if (verb == "word") {
      result.doc = word_to_json(signature_word(map(map_arg)));
    } else if (verb == "decide") {
      result = verdict_result(decide(map(map_arg), question, group, opt.max_period));
    } else if (verb == "factor") {
      result.doc = factorization_to_json(factor_three_involutions(map(map_arg)));
    } else if (verb == "certify") {
      result = certify(map(map_arg), docs.load(extra.at(0)), claims, opt.normalize);
    }
  } catch (const Error& e) {
    err << "plrev: " << e.what() << "\n";
    Json doc = error_doc(std::string(to_string(e.code())), e.message());
    if (e.point()) doc["point"] = to_string(*e.point());
    result = {doc, kExitInvalid};
  }

  if (opt.format == "text") {
    render_text(result.doc, out);
  } else {
    out << result.doc.dump(2) << "\n";
  }
  return result.code;
}

}  // namespace plrev
