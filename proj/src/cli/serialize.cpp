#include <sstream>

#include "qck/cli.hpp"

namespace qck::cli {

json to_json(const BigInt& x) {
  if (arith::fits_int64(x)) return x.get_si();
  return x.get_str();
}

BigInt bigint_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<long>());
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw UsageError("not an integer: " + j.dump());
    return v;
  }
  throw UsageError("not an integer: " + j.dump());
}

json to_json(const quart::QuartInt& x) {
  json c = json::array();
  for (const auto& v : x.c) c.push_back(to_json(v));
  return {{"text", quart::to_string(x)}, {"coefficients", c}};
}

json to_json(const ideals::Ideal& a) {
  json h = json::array();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h.push_back(to_json(a.hnf()(i, j)));
  return {{"p", a.p()}, {"hnf", h}, {"norm", to_json(a.norm())}};
}

ideals::Ideal ideal_from_json(const json& j) {
  if (!j.is_object() || !j.contains("p") || !j.contains("hnf")) throw UsageError("ideal JSON needs \"p\" and \"hnf\"");
  const auto p = j.at("p").get<std::int64_t>();
  json flat = json::array();
  for (const auto& v : j.at("hnf")) {
    if (v.is_array())
      for (const auto& w : v) flat.push_back(w);
    else
      flat.push_back(v);
  }
  if (flat.size() != 16) throw UsageError("ideal JSON: \"hnf\" must hold 16 integers");
  arith::IntMatrix h(4, 4);
  for (std::size_t k = 0; k < 16; ++k) h(k / 4, k % 4) = bigint_from_json(flat[k]);
  try {
    return ideals::Ideal::from_hnf(h, p);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("ideal JSON: ") + e.what());
  }
}

json to_json(const ideals::PrimeIdealFactor& P) {
  json j = to_json(P.ideal);
  j["q"] = to_json(P.q);
  j["e"] = P.e;
  j["f"] = P.f;
  j["exponent"] = P.exponent;
  return j;
}

json to_json(const classgrp::ClassGroupStructure& s) {
  json d = json::array(), g = json::array(), two = json::array();
  for (const auto& v : s.elementary_divisors) d.push_back(to_json(v));
  for (const auto& v : s.generators) g.push_back(to_json(v));
  for (const auto& v : classgrp::two_sylow(s)) two.push_back(to_json(v));
  json j = {{"p", s.p},
            {"h", to_json(s.h)},
            {"elementary_divisors", d},
            {"structure", classgrp::group_to_string(s.elementary_divisors)},
            {"two_sylow", two},
            {"generators", g},
            {"certification", classgrp::to_string(s.certification)},
            {"minkowski_bound", to_json(s.minkowski_bound)},
            {"small_bound", to_json(s.small_bound)},
            {"base_size", s.base_size},
            {"relations", s.relations},
            {"descended", s.descended},
            {"descent_complete", s.descent_complete},
            {"kernel_trivial", s.kernel_trivial},
            {"notes", s.notes}};
  if (s.exhaustive_count) j["exhaustive_count"] = *s.exhaustive_count;
  return j;
}

ideals::Ideal parse_ideal_arg(const std::string& ideal_json, const std::string& gens, std::int64_t p) {
  if (!ideal_json.empty() == !gens.empty()) throw UsageError("give exactly one of --ideal and --gens");
  if (!ideal_json.empty()) {
    json j = json::parse(ideal_json, nullptr, false);
    if (j.is_discarded()) throw UsageError("--ideal is not valid JSON");
    auto a = ideal_from_json(j);
    if (a.p() != p) throw UsageError("--ideal belongs to p = " + std::to_string(a.p()));
    return a;
  }
  std::vector<quart::QuartInt> g;
  std::stringstream ss(gens);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      g.push_back(quart::parse_quartint(item, p));
    } catch (const PreconditionError& e) {
      throw UsageError("--gens: " + std::string(e.what()));
    }
  }
  try {
    return ideals::Ideal::from_generators(g);
  } catch (const PreconditionError& e) {
    throw UsageError("--gens: " + std::string(e.what()));
  }
}

namespace {

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(const json& j, int indent, std::ostringstream& os) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (scalar(v)) {
        os << pad << k << ": " << scalar_text(v) << '\n';
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
        os << pad << k << ": [";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar_text(v[i]);
        os << "]\n";
      } else {
        os << pad << k << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (scalar(v)) {
        os << pad << "- " << scalar_text(v) << '\n';
      } else {
        os << pad << "-\n";
        render(v, indent + 2, os);
      }
    }
  } else {
    os << pad << scalar_text(j) << '\n';
  }
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

}  // namespace qck::cli
