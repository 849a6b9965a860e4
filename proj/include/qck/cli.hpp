#pragma once

// The `qck` command-line front end.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "qck/classgrp.hpp"
#include "qck/criteria.hpp"

namespace qck::cli {

using json = nlohmann::ordered_json;

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct RunConfig {
  std::int64_t p = 7;
  std::uint64_t seed = 1;
  std::optional<double> deadline_seconds;  // absent: no limit
  std::string cache_path;
  long precision_bits = 128;
  unsigned threads = 0;
  bool json = false;
  bool deterministic = false;

  Deadline deadline() const;
};

// Checks p = 7 mod 16 prime and the numeric limits; UsageError otherwise.
void validate(const RunConfig& c);

class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// JSON forms.  An ideal is {"p": p, "hnf": [16 integers, row-major]}.

json to_json(const BigInt& x);  // number when it fits in int64, else a decimal string
BigInt bigint_from_json(const json& j);
json to_json(const quart::QuartInt& x);  // "a + b*r + ..." plus the coefficient list
json to_json(const ideals::Ideal& a);
ideals::Ideal ideal_from_json(const json& j);
json to_json(const ideals::PrimeIdealFactor& P);
json to_json(const classgrp::ClassGroupStructure& s);

// Ideal from the --ideal (JSON) or --gens ("2, 1+r") option text.
ideals::Ideal parse_ideal_arg(const std::string& ideal_json, const std::string& gens, std::int64_t p);

// Indented "key: value" rendering for the non-JSON output.
std::string render_text(const json& report);

// ---------------------------------------------------------------------------

// Parses argv, runs the subcommand, writes the report and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qck::cli
