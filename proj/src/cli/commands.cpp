#include <chrono>
#include <ctime>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "qck/cli.hpp"
#include "qck/real.hpp"

namespace qck::cli {

using classgrp::ClassGroupStructure;
using ideals::Ideal;
using quad::QuadInt;
using quart::QuartInt;
using arith::Real;

namespace {

struct Outcome {
  json report = json::object();
  bool passed = true;
};

// Options of individual subcommands.
struct Options {
  std::int64_t q = 0;
  std::string ideal, gens, alpha, B, h;
  std::int64_t from = 0, to = 0;
  bool resume = false;
  bool principality = false;
};

QuartInt parse_element(const std::string& s, std::int64_t p, const char* what) {
  if (s.empty()) throw UsageError(std::string(what) + " is required");
  try {
    return quart::parse_quartint(s, p);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

classgrp::ClassGroupConfig group_config(const RunConfig& c) {
  classgrp::ClassGroupConfig g;
  g.seed = c.seed;
  g.deadline = c.deadline();
  g.threads = c.threads;
  return g;
}

// h from --class-number, or from a class group computation.
BigInt class_number(const RunConfig& c, const Options& o, json& report) {
  if (!o.h.empty()) {
    BigInt h;
    if (h.set_str(o.h, 10) != 0 || h <= 0) throw UsageError("--class-number must be a positive integer");
    report["class_number_source"] = "given";
    return h;
  }
  auto s = classgrp::compute_class_group(c.p, group_config(c));
  report["class_number_source"] = "computed (" + classgrp::to_string(s.certification) + ")";
  return s.h;
}

QuadInt uf_power(const QuadInt& U, int e) {
  return e >= 0 ? quad::pow(U, static_cast<unsigned>(e)) : quad::pow(U.conj(), static_cast<unsigned>(-e));
}

Ideal prime_above_two(std::int64_t p) {
  return Ideal::from_generators({QuartInt::rational(2, p), QuartInt{1, 1, 0, 0, p}});
}

json factorization(const std::vector<ideals::PrimeIdealFactor>& f) {
  json a = json::array();
  for (const auto& P : f) a.push_back(to_json(P));
  return a;
}

// ---------------------------------------------------------------------------

Outcome field_info(const RunConfig& c, const Options&) {
  Outcome o;
  const std::int64_t p = c.p;
  const auto field = quart::Field::get(p);
  const QuadInt U = field->U_F();
  const auto L2 = field->L2();
  const auto units = field->units(c.deadline());
  const Ideal P2 = prime_above_two(p);
  const Ideal R = Ideal::principal(QuartInt{0, 1, 0, 0, p});

  const auto prec = static_cast<mpfr_prec_t>(c.precision_bits);
  const int digits = static_cast<int>(c.precision_bits * 0.30103);
  Real r = sqrt(sqrt(Real(static_cast<long>(p), prec)));

  o.report["U_F"] = quad::to_string(U);
  o.report["L2"] = quad::to_string(L2.L2);
  o.report["L2_exponent"] = L2.e;
  o.report["discriminant"] = to_json(field->discriminant());
  o.report["minkowski_bound"] = to_json(field->minkowski_bound());
  o.report["r"] = r.str(digits);
  o.report["mu1"] = quart::to_string(units.mu1);
  o.report["mu2"] = quart::to_string(units.mu2);
  o.report["units_certified"] = units.certified;
  o.report["regulator"] = units.regulator;
  o.report["factorization_of_2"] = factorization(ideals::factor(Ideal::principal(QuartInt::rational(2, p))));
  o.report["factorization_of_p"] = factorization(ideals::factor(Ideal::principal(QuartInt::rational(p, p))));

  const QuadInt two = QuadInt::rational(2, p);
  std::vector<std::pair<std::string, bool>> checks = {
      {"2 = L2^2 U_F^e", L2.L2 * L2.L2 * uf_power(U, L2.e) == two},
      {"<2> = <2, 1+r>^4", ideals::pow(P2, 4) == Ideal::principal(QuartInt::rational(2, p))},
      {"<p> = <r>^4", ideals::pow(R, 4) == Ideal::principal(QuartInt::rational(p, p))},
      {"<2, 1+r>^2 = <L2>", P2 * P2 == Ideal::principal(QuartInt::from_quad(L2.L2))},
      {"disc = -256 p^3", field->discriminant() == -256 * arith::pow(BigInt(p), 3)},
      {"N_K/F(mu1) = +-1", quart::norm_KF(units.mu1) * BigInt(units.mu1_norm_sign) == QuadInt::rational(1, p)},
      {"N_K/F(mu2) = +-U_F", quart::norm_KF(units.mu2) * BigInt(units.mu2_norm_sign) == U},
  };
  json cj = json::object();
  for (const auto& [name, ok] : checks) {
    cj[name] = ok ? "pass" : "FAIL";
    o.passed &= ok;
  }
  o.report["checks"] = cj;
  return o;
}

Outcome factor_prime(const RunConfig& c, const Options& opt) {
  if (opt.q < 2) throw UsageError("--q must be a prime");
  Outcome o;
  auto f = ideals::dedekind_factor_rational_prime(BigInt(static_cast<long>(opt.q)), c.p);
  json a = json::array();
  for (const auto& P : f) {
    json j = to_json(P);
    if (opt.principality) {
      auto g = ideals::find_generator(P.ideal, c.deadline());
      j["principal"] = g.has_value();
      if (g) j["generator"] = quart::to_string(*g);
    }
    a.push_back(j);
  }
  o.report["q"] = opt.q;
  o.report["factors"] = a;
  return o;
}

Outcome ideal_norm(const RunConfig& c, const Options& opt) {
  Outcome o;
  Ideal a = parse_ideal_arg(opt.ideal, opt.gens, c.p);
  o.report["ideal"] = to_json(a);
  o.report["norm"] = to_json(a.norm());
  return o;
}

Outcome principality(const RunConfig& c, const Options& opt) {
  Outcome o;
  Ideal a = parse_ideal_arg(opt.ideal, opt.gens, c.p);
  auto g = ideals::find_generator(a, c.deadline());
  o.report["ideal"] = to_json(a);
  o.report["principal"] = g.has_value();
  if (g) o.report["generator"] = to_json(*g);
  else o.report["proof"] = "exhaustive search over a fundamental domain of the unit lattice found no generator";
  return o;
}

json verdict_json(const criteria::RamificationVerdict& v) {
  json ev = json::array();
  for (const auto& e : v.evidence)
    ev.push_back({{"quantity", e.quantity}, {"residue", to_json(e.value)}, {"modulus", to_json(e.modulus)}});
  json j = {{"condition", criteria::to_string(v.condition)},
            {"ramifies_completely", v.condition == criteria::Condition::none},
            {"alpha_used", quart::to_string(v.alpha)},
            {"preprocessed", v.preprocessed},
            {"paper_literal", v.paper_literal},
            {"norm", to_json(v.norm)},
            {"evidence", ev}};
  return j;
}

Outcome classify(const RunConfig& c, const Options& opt) {
  Outcome o;
  QuartInt a = parse_element(opt.alpha, c.p, "--alpha");
  o.report["alpha"] = quart::to_string(a);
  try {
    o.report["verdict"] = verdict_json(criteria::classify_ramification_at_2(a));
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  return o;
}

Outcome oracle(const RunConfig& c, const Options& opt) {
  Outcome o;
  Ideal a = parse_ideal_arg(opt.ideal, opt.gens, c.p);
  BigInt h = class_number(c, opt, o.report);
  criteria::ParityVerdict v;
  try {
    v = criteria::class_order_parity_oracle(a, h);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  }
  o.report["ideal"] = to_json(a);
  o.report["class_number"] = to_json(h);
  o.report["norm_mod_8"] = v.residue_mod_8;
  o.report["class_order_odd"] = v.order_odd;
  if (v.principal) o.report["principal"] = *v.principal;
  return o;
}

json witness_json(const criteria::WitnessPrime& w) {
  return {{"q", to_json(w.q)},
          {"nonresidue", to_json(w.nonresidue)},
          {"residue_class", to_json(w.residue_class)},
          {"modulus", to_json(w.modulus)}};
}

bool witness_ok(const criteria::WitnessPrime& w, std::int64_t p) {
  const BigInt P = static_cast<long>(p);
  return arith::is_prime(w.q) && arith::mod(w.q, 8) == 3 && arith::jacobi_symbol(w.q, P) == -1 &&
         w.modulus == 8 * P && arith::mod(w.residue_class, 8) == 3 && arith::mod(w.residue_class, P) == arith::mod(w.q, P);
}

Outcome witness_prime(const RunConfig& c, const Options&) {
  Outcome o;
  auto w = criteria::construct_witness_prime(c.p);
  o.report["witness"] = witness_json(w);
  o.passed = witness_ok(w, c.p);
  o.report["congruences_verified"] = o.passed;
  return o;
}

json hilbert_json(const criteria::HilbertReport& r) {
  return {{"precondition_h_equals_2", r.precondition},
          {"two_is_L2_squared_UF", r.two_is_L2_squared_UF},
          {"uf_unit_case", r.uf_unit_case},
          {"uf_ideal_trivial", r.uf_ideal_trivial},
          {"two_not_square", r.two_not_square},
          {"verified", r.verified()},
          {"verdict", r.verdict}};
}

Outcome hilbert_check(const RunConfig& c, const Options& opt) {
  Outcome o;
  BigInt h = class_number(c, opt, o.report);
  auto r = criteria::hilbert_class_field_check(c.p, h);
  o.report["class_number"] = to_json(h);
  o.report["hilbert"] = hilbert_json(r);
  o.passed = r.verified();
  return o;
}

json audit_json(const criteria::AuditReport& r) {
  json items = json::array();
  for (const auto& it : r.items) items.push_back({{"item", it.item}, {"passed", it.passed}, {"detail", it.detail}});
  json j = {{"hypotheses_hold", r.hypotheses_hold},
            {"hypothesis_failures", r.hypothesis_failures},
            {"condition", criteria::to_string(r.condition)},
            {"items", items},
            {"passed", r.passed()}};
  if (r.I) j["I"] = to_json(*r.I);
  return j;
}

Outcome audit(const RunConfig& c, const Options& opt) {
  Outcome o;
  QuartInt a = parse_element(opt.alpha, c.p, "--alpha");
  if (a.is_zero()) throw UsageError("--alpha must be nonzero");
  o.report["alpha"] = quart::to_string(a);

  json odd = json::array();
  auto ov = criteria::audit_odd_valuation_ramification(a);
  for (const auto& q : ov.primes)
    odd.push_back({{"prime", to_json(q.prime.ideal)},
                   {"valuation", q.valuation},
                   {"disc_valuation", q.disc_valuation},
                   {"ramified", q.ramified}});
  o.report["odd_valuation_primes"] = odd;

  std::optional<QuadInt> B;
  if (!opt.B.empty()) {
    try {
      B = quad::parse_quadint(opt.B, c.p);
    } catch (const PreconditionError& e) {
      throw UsageError(std::string("--B: ") + e.what());
    }
  } else {
    B = quad::sqrt_in_OF(quart::norm_KF(a));
  }
  if (!B) {
    o.report["audit"] = {{"hypotheses_hold", false},
                         {"hypothesis_failures", {"norm_KF(alpha) is not a square in O_F"}}};
    o.passed = false;
    return o;
  }
  o.report["B"] = quad::to_string(*B);
  auto r = criteria::audit_square_ideal_generator(a, *B, c.deadline());
  o.report["audit"] = audit_json(r);
  o.passed = r.passed();
  return o;
}

Outcome classgroup(const RunConfig& c, const Options&) {
  Outcome o;
  auto s = classgrp::compute_class_group(c.p, group_config(c));
  o.report["class_group"] = to_json(s);
  return o;
}

Outcome table(const RunConfig& c, const Options& opt) {
  if (opt.from <= 0 || opt.to < opt.from) throw UsageError("table needs 0 < --from <= --to");
  std::vector<std::int64_t> primes;
  for (std::int64_t p = opt.from; p <= opt.to; ++p)
    if (p % 16 == 7 && arith::is_prime(BigInt(static_cast<long>(p)))) primes.push_back(p);
  Outcome o;
  auto rows = classgrp::tabulate(primes, group_config(c), c.cache_path, opt.resume);
  json a = json::array();
  for (const auto& r : rows) {
    json j = {{"p", r.p}};
    if (r.h) {
      json d = json::array();
      for (const auto& v : r.divisors) d.push_back(to_json(v));
      j["h"] = to_json(*r.h);
      j["divisors"] = d;
      j["certification"] = r.certification;
      j["from_cache"] = r.from_cache;
    } else {
      j["error"] = r.error;
      o.passed = false;
    }
    if (!c.deterministic) j["wall_seconds"] = r.wall_seconds;
    a.push_back(j);
  }
  o.report["from"] = opt.from;
  o.report["to"] = opt.to;
  o.report["rows"] = a;
  return o;
}

// ---------------------------------------------------------------------------
// verify-paper

// alpha = gamma^2 u in cases 2-4 of the classifier, with B^2 = norm_KF(alpha).
std::vector<std::pair<QuartInt, QuadInt>> audit_instances(std::int64_t p, std::uint64_t seed, std::size_t want,
                                                          const Deadline& deadline) {
  std::mt19937_64 rng(seed);
  const auto field = quart::Field::get(p);
  const auto units = field->units(deadline);
  const QuartInt m1 = QuartInt::rational(-1, p), uf = QuartInt::from_quad(field->U_F());
  const std::vector<QuartInt> us = {m1, units.mu1, units.mu1 * m1, uf, uf * m1, uf * units.mu1};
  std::vector<std::pair<QuartInt, QuadInt>> out;
  std::set<QuartInt> seen;
  for (int it = 0; it < 100000 && out.size() < want; ++it) {
    deadline.check("audit instance search");
    auto c = [&] { return BigInt(static_cast<long>(rng() % 9) - 4); };
    QuartInt g{c(), c(), c(), c(), p};
    if (g.is_zero()) continue;
    for (const auto& u : us) {
      QuartInt a = g * g * u;
      if (a.in_OF() || quart::sqrt_in_OK(a)) continue;
      auto v = criteria::evaluate_conditions(a);
      if (v.preprocessed || (v.condition != criteria::Condition::case2 && v.condition != criteria::Condition::case3 &&
                             v.condition != criteria::Condition::case4))
        continue;
      auto B = quad::sqrt_in_OF(quart::norm_KF(a));
      if (B && seen.insert(a).second) out.emplace_back(a, *B);
    }
  }
  return out;
}

Outcome verify_paper(const RunConfig& c, const Options&) {
  const std::int64_t p = c.p;
  const Deadline deadline = c.deadline();
  const auto field = quart::Field::get(p);
  Outcome o;
  json steps = json::array();
  std::string first_failure;
  auto step = [&](const std::string& name, bool ok, json detail) {
    detail["step"] = name;
    detail["passed"] = ok;
    steps.push_back(std::move(detail));
    if (!ok && first_failure.empty()) first_failure = name;
  };

  // ramified primes
  {
    const Ideal P2 = prime_above_two(p);
    bool four = ideals::pow(P2, 4) == Ideal::principal(QuartInt::rational(2, p));
    bool rp = ideals::pow(Ideal::principal(QuartInt{0, 1, 0, 0, p}), 4) == Ideal::principal(QuartInt::rational(p, p));
    bool nonprincipal = !ideals::find_generator(P2, deadline).has_value();
    step("ramified primes", four && rp && nonprincipal,
         {{"<2> = <2,1+r>^4", four}, {"<p> = <r>^4", rp}, {"<2,1+r> non-principal", nonprincipal}});
  }
  // L2 identity
  const auto L2 = field->L2();
  {
    bool id = L2.L2 * L2.L2 * uf_power(field->U_F(), L2.e) == QuadInt::rational(2, p);
    bool sq = prime_above_two(p) * prime_above_two(p) == Ideal::principal(QuartInt::from_quad(L2.L2));
    step("L2 identity", id && sq,
         {{"L2", quad::to_string(L2.L2)}, {"e", L2.e}, {"2 = L2^2 U_F^e", id}, {"<2,1+r>^2 = <L2>", sq}});
  }

  const ClassGroupStructure s = classgrp::compute_class_group(p, group_config(c));
  const BigInt h = s.h;

  // oracle against generator search
  {
    BigInt odd = h;
    while (odd % 2 == 0) odd /= 2;
    const BigInt bound = std::min(s.minkowski_bound, BigInt(150));
    std::size_t checked = 0, mismatches = 0;
    json bad = json::array();
    for (auto q : arith::primes_up_to(bound.get_si())) {
      if (q == 2) continue;
      for (const auto& P : ideals::dedekind_factor_rational_prime(q, p)) {
        if (P.norm() > bound) continue;
        auto v = criteria::class_order_parity_oracle(P.ideal, h);
        bool direct;
        if (v.principal) {
          direct = ideals::find_generator(P.ideal, deadline).has_value();
          if (direct != *v.principal) {
            bad.push_back(to_json(P.ideal));
            ++mismatches;
          }
        } else {
          Ideal x = Ideal::unit(p);
          for (BigInt k = 0; k < odd; ++k) x = classgrp::reduce_in_class(x * P.ideal);
          // the order of [P] is odd iff [P]^odd = 1
          direct = ideals::find_generator(x, deadline).has_value();
          if (direct != v.order_odd) {
            bad.push_back(to_json(P.ideal));
            ++mismatches;
          }
        }
        ++checked;
      }
    }
    step("oracle vs generator search", mismatches == 0,
         {{"norm_bound", to_json(bound)}, {"ideals_checked", checked}, {"mismatches", mismatches}, {"mismatched", bad}});
  }
  // class group and 2-Sylow
  {
    auto two = classgrp::two_sylow(s);
    bool ok = arith::mod(h, 4) == 2 && two == std::vector<BigInt>{2};
    json d = json::array();
    for (const auto& v : s.elementary_divisors) d.push_back(to_json(v));
    step("class group", ok,
         {{"h", to_json(h)},
          {"structure", classgrp::group_to_string(s.elementary_divisors)},
          {"two_sylow", classgrp::group_to_string(two)},
          {"certification", classgrp::to_string(s.certification)}});
  }
  // Hilbert class field
  if (h == 2) {
    auto r = criteria::hilbert_class_field_check(p, h);
    step("hilbert class field", r.verified(), hilbert_json(r));
  } else {
    step("hilbert class field", true, {{"skipped", true}, {"note", "h = " + h.get_str() + ", check needs h = 2"}});
  }
  // witness prime
  {
    auto w = criteria::construct_witness_prime(p);
    step("witness prime", witness_ok(w, p), witness_json(w));
  }
  // audit on constructed instances
  {
    auto inst = audit_instances(p, c.seed, 20, deadline);
    std::size_t passed = 0;
    json fails = json::array();
    for (const auto& [a, B] : inst) {
      auto r = criteria::audit_square_ideal_generator(a, B, deadline);
      if (r.passed()) ++passed;
      else fails.push_back(quart::to_string(a));
    }
    step("audit", !inst.empty() && passed == inst.size(),
         {{"instances", inst.size()}, {"passed_instances", passed}, {"failed", fails}});
  }

  o.report["h"] = to_json(h);
  o.report["steps"] = steps;
  o.passed = first_failure.empty();
  if (!o.passed) o.report["first_failure"] = first_failure;
  return o;
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Options opt;
  double deadline = -1;

  CLI::App app{"Arithmetic of the pure quartic fields Q(p^(1/4)), p prime, p = 7 (mod 16)", "qck"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--p", cfg.p, "field prime, p = 7 (mod 16)")->envname("QCK_P");
  app.add_option("--seed", cfg.seed, "random seed")->envname("QCK_SEED");
  app.add_option("--deadline", deadline, "wall-clock budget in seconds")->envname("QCK_DEADLINE");
  app.add_option("--cache", cfg.cache_path, "JSON-lines cache file for table rows")->envname("QCK_CACHE");
  app.add_option("--precision", cfg.precision_bits, "bits for printed real approximations")->envname("QCK_PRECISION");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)")->envname("QCK_THREADS");
  app.add_flag("--json", cfg.json, "print the report as JSON")->envname("QCK_JSON");
  app.add_flag("--deterministic", cfg.deterministic, "omit timestamps and timings")->envname("QCK_DETERMINISTIC");

  using Handler = std::function<Outcome(const RunConfig&, const Options&)>;
  std::map<CLI::App*, std::pair<std::string, Handler>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = {name, std::move(h)};
    return s;
  };
  auto ideal_opts = [&](CLI::App* s) {
    s->add_option("--ideal", opt.ideal, "ideal as JSON {\"p\":p,\"hnf\":[16 integers]}");
    s->add_option("--gens", opt.gens, "comma-separated generators, e.g. \"2, 1+r\"");
  };

  sub("field-info", "units, L2, discriminant, Minkowski bound, factorizations of 2 and p", field_info);
  auto* fp = sub("factor-prime", "prime ideals above a rational prime q", factor_prime);
  fp->add_option("--q", opt.q, "rational prime")->required();
  fp->add_flag("--principality", opt.principality, "decide principality of each factor");
  ideal_opts(sub("ideal-norm", "HNF and absolute norm of an ideal", ideal_norm));
  ideal_opts(sub("principality", "generator search for an ideal", principality));
  sub("classify", "2-adic ramification classifier for K(sqrt(alpha))", classify)
      ->add_option("--alpha", opt.alpha, "element of O_K, e.g. \"1+2r+s\"")
      ->required();
  auto* orc = sub("oracle", "class-order parity of an odd-norm ideal", oracle);
  ideal_opts(orc);
  orc->add_option("--class-number", opt.h, "class number (computed when omitted)");
  sub("witness-prime", "prime q = 3 (mod 8) with (q/p) = -1", witness_prime);
  sub("hilbert-check", "checks H_K = K(sqrt 2) when h_K = 2", hilbert_check)
      ->add_option("--class-number", opt.h, "class number (computed when omitted)");
  auto* au = sub("audit", "audit of <alpha> = I^2 with N_K/F(alpha) = B^2", audit);
  au->add_option("--alpha", opt.alpha, "element of O_K")->required();
  au->add_option("--B", opt.B, "B in O_F with B^2 = N_K/F(alpha) (found when omitted)");
  sub("classgroup", "class group structure", classgroup);
  auto* tb = sub("table", "class numbers for the primes p = 7 (mod 16) in a range", table);
  tb->add_option("--from", opt.from, "first p")->required();
  tb->add_option("--to", opt.to, "last p")->required();
  tb->add_flag("--resume", opt.resume, "reuse rows cached for the same seed");
  sub("verify-paper", "runs every check for one prime", verify_paper);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (deadline >= 0) cfg.deadline_seconds = deadline;

  CLI::App* chosen = app.get_subcommands().front();
  const auto& [name, handler] = handlers.at(chosen);

  json report;
  int code = kPass;
  std::string error;
  const auto t0 = std::chrono::steady_clock::now();
  Outcome result;
  try {
    validate(cfg);
    result = handler(cfg, opt);
    code = result.passed ? kPass : kFail;
  } catch (const UsageError& e) {
    code = kUsage;
    error = e.what();
  } catch (const ResourceLimit& e) {
    code = kResource;
    error = e.what();
  } catch (const PreconditionError& e) {
    code = kUsage;
    error = e.what();
  } catch (const std::exception& e) {
    code = kFail;
    error = e.what();
  }

  report["command"] = name;
  if (name != "table") report["p"] = cfg.p;
  report["seed"] = cfg.seed;
  if (!cfg.deterministic) {
    report["timestamp"] = utc_now();
    report["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  if (error.empty()) {
    for (auto& [k, v] : result.report.items()) report[k] = v;
    report["passed"] = result.passed;
  } else {
    report["error"] = error;
  }
  report["exit_code"] = code;

  if (cfg.json) out << report.dump(2) << '\n';
  else out << render_text(report);
  if (!error.empty()) err << "qck " << name << ": " << error << '\n';
  return code;
}

}  // namespace qck::cli
