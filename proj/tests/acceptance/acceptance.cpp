// One line per acceptance criterion; exit status 0 iff every line is PASS.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "qck/classgrp.hpp"
#include "qck/criteria.hpp"

using namespace qck;
using classgrp::ClassGroupStructure;
using ideals::Ideal;
using quad::QuadInt;
using quart::QuartInt;

namespace {

// time limits in seconds
constexpr double kFastTierLimit = 60;
constexpr double kStretchTierLimit = 1800;
constexpr double kOracleLimit = 60;
constexpr double kNormScanLimit = 120;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Line {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string& title, const std::function<Line()>& check) {
  Line l;
  try {
    l = check();
  } catch (const std::exception& e) {
    l = {false, std::string("exception: ") + e.what()};
  }
  if (!l.pass) ++failures;
  std::printf("criterion %d %s %s: %s\n", n, l.pass ? "PASS" : "FAIL", title.c_str(), l.detail.c_str());
  std::fflush(stdout);
}

struct Timed {
  ClassGroupStructure s;
  double seconds = 0;
};
std::map<std::int64_t, Timed> groups;

const Timed& group(std::int64_t p) {
  auto it = groups.find(p);
  if (it != groups.end()) return it->second;
  auto t0 = Clock::now();
  auto s = classgrp::compute_class_group(p);
  return groups[p] = {std::move(s), since(t0)};
}

Line table_tier(const std::map<std::int64_t, long>& expected, double limit) {
  std::ostringstream d;
  bool ok = true;
  for (const auto& [p, h] : expected) {
    const auto& g = group(p);
    bool row = g.s.h == h && g.seconds <= limit;
    ok &= row;
    d << p << ":h=" << g.s.h << "(" << classgrp::to_string(g.s.certification) << "," << std::fixed;
    d.precision(1);
    d << g.seconds << "s)" << (row ? "" : "!") << " ";
  }
  d << "limit " << limit << "s";
  return {ok, d.str()};
}

Ideal P2(std::int64_t p) { return Ideal::from_generators({QuartInt::rational(2, p), QuartInt{1, 1, 0, 0, p}}); }

QuartInt random_element(std::mt19937_64& rng, std::int64_t p, long range) {
  auto c = [&] { return BigInt(static_cast<long>(rng() % (2 * range + 1)) - range); };
  for (;;) {
    QuartInt x{c(), c(), c(), c(), p};
    if (!x.is_zero()) return x;
  }
}

// N(a + b r + c r^2 + d r^3) through N_F(N_K/F) in machine integers.
std::int64_t norm_int64(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t p) {
  std::int64_t u = a * a + p * c * c - 2 * p * b * d;
  std::int64_t v = 2 * a * c - b * b - p * d * d;
  return u * u - p * v * v;
}

}  // namespace

int main() {
  const std::map<std::int64_t, long> fast = {{7, 2},   {23, 2},  {71, 2},  {103, 2}, {151, 2},
                                             {167, 2}, {199, 2}, {263, 2}, {311, 2}};
  const std::map<std::int64_t, long> stretch = {{359, 6}, {439, 50}, {727, 330}};

  report(1, "table fast tier", [&] { return table_tier(fast, kFastTierLimit); });
  report(2, "table stretch tier", [&] { return table_tier(stretch, kStretchTierLimit); });

  report(3, "h = 2 mod 4 and 2-Sylow Z/2", [&] {
    bool ok = true;
    std::ostringstream d;
    for (const auto* tier : {&fast, &stretch})
      for (const auto& [p, h] : *tier) {
        const auto& s = group(p).s;
        auto two = classgrp::two_sylow(s);
        bool row = arith::mod(s.h, 4) == 2 && two == std::vector<BigInt>{2};
        ok &= row;
        if (!row) d << p << ": h=" << s.h << " 2-Sylow " << classgrp::group_to_string(two) << "; ";
      }
    if (ok) d << "12 primes";
    return Line{ok, d.str()};
  });

  report(4, "structure of 2", [&] {
    bool ok = true;
    std::ostringstream d;
    for (std::int64_t p : {7, 23, 71}) {
      const auto field = quart::Field::get(p);
      const auto L2 = field->L2();
      const QuadInt U = field->U_F();
      const QuadInt Ue = L2.e >= 0 ? quad::pow(U, static_cast<unsigned>(L2.e)) : quad::pow(U.conj(), static_cast<unsigned>(-L2.e));
      bool fourth = ideals::pow(P2(p), 4) == Ideal::principal(QuartInt::rational(2, p));
      bool nonprincipal = !ideals::find_generator(P2(p)).has_value();
      bool square = P2(p) * P2(p) == Ideal::principal(QuartInt::from_quad(L2.L2));
      bool identity = L2.L2 * L2.L2 * Ue == QuadInt::rational(2, p);
      ok &= fourth && nonprincipal && square && identity;
      d << p << ":" << fourth << nonprincipal << square << identity << "(e=" << L2.e << ") ";
    }
    return Line{ok, d.str() + "[P^4=<2>, P non-principal, P^2=<L2>, 2=L2^2 U_F^e]"};
  });

  report(5, "parity oracle vs generator search, p = 7", [&] {
    auto t0 = Clock::now();
    std::size_t checked = 0, mismatches = 0;
    for (auto q : arith::primes_up_to(36)) {
      if (q == 2) continue;
      for (const auto& P : ideals::dedekind_factor_rational_prime(BigInt(q), 7)) {
        if (P.norm() > 36) continue;
        auto v = criteria::class_order_parity_oracle(P.ideal, BigInt(2));
        bool direct = ideals::find_generator(P.ideal).has_value();
        if (!v.principal || *v.principal != direct) ++mismatches;
        ++checked;
      }
    }
    double t = since(t0);
    std::ostringstream d;
    d << checked << " prime ideals of odd norm <= 36, " << mismatches << " mismatches, " << t << "s (limit "
      << kOracleLimit << "s)";
    return Line{checked > 0 && mismatches == 0 && t <= kOracleLimit, d.str()};
  });

  report(6, "factorization of <3> in Q(7^(1/4))", [&] {
    auto f = ideals::dedekind_factor_rational_prime(BigInt(3), 7);
    std::multiset<BigInt> norms;
    bool ok = f.size() == 3;
    std::ostringstream d;
    for (const auto& P : f) {
      norms.insert(P.norm());
      bool principal = ideals::find_generator(P.ideal).has_value();
      ok &= principal == (P.norm() == 9);
      d << "N=" << P.norm() << (principal ? " principal" : " non-principal") << "; ";
    }
    ok &= norms == std::multiset<BigInt>{3, 3, 9};
    return Line{ok, d.str()};
  });

  report(7, "Hilbert class field K(sqrt 2)", [&] {
    bool ok = true;
    std::ostringstream d;
    for (std::int64_t p : {7, 23}) {
      auto r = criteria::hilbert_class_field_check(p, group(p).s.h);
      ok &= r.verified();
      d << p << ": " << r.verdict << "; ";
    }
    return Line{ok, d.str()};
  });

  report(8, "property suites", [&] {
    std::mt19937_64 rng(20261016);
    const std::int64_t ps[] = {7, 23, 71};
    std::size_t bad_mult = 0, bad_two_path = 0, bad_hnf = 0, bad_mod8 = 0, odd_cases = 0;
    for (int i = 0; i < 10000; ++i) {
      const std::int64_t p = ps[i % 3];
      QuartInt x = random_element(rng, p, 20), y = random_element(rng, p, 20);
      if (quart::absolute_norm(x * y) != quart::absolute_norm(x) * quart::absolute_norm(y)) ++bad_mult;
      if (quart::absolute_norm(x) != quad::norm_F(quart::norm_KF(x)) ||
          quart::absolute_norm(x) != arith::determinant(quart::mult_matrix(x)))
        ++bad_two_path;
    }
    for (int i = 0; i < 1000; ++i) {
      const std::int64_t p = ps[i % 3];
      std::vector<QuartInt> g = {random_element(rng, p, 6), random_element(rng, p, 6)};
      Ideal a = Ideal::from_generators(g);
      std::vector<QuartInt> h = {g[1] + g[0] * BigInt(static_cast<long>(rng() % 7) - 3), g[0], g[1]};
      std::shuffle(h.begin(), h.end(), rng);
      if (!(Ideal::from_generators(h) == a)) ++bad_hnf;
    }
    while (odd_cases < 10000) {
      const std::int64_t p = ps[odd_cases % 3];
      QuartInt x = random_element(rng, p, 30);
      BigInt n = quart::absolute_norm(x);
      if (n % 2 == 0) continue;
      ++odd_cases;
      BigInt r = arith::mod(n, 8);
      if (r != 1 && r != 7) ++bad_mod8;
    }

    // audit on alpha = gamma^2 u, p = 7
    const auto units = quart::Field::get(7)->units();
    const QuartInt m1 = QuartInt::rational(-1, 7), uf = QuartInt::from_quad(quart::Field::get(7)->U_F());
    const std::vector<QuartInt> us = {m1, units.mu1, units.mu1 * m1, uf, uf * m1, uf * units.mu1};
    std::set<std::string> seen;
    std::size_t instances = 0, audit_ok = 0;
    for (int it = 0; it < 20000 && instances < 25; ++it) {
      QuartInt g = random_element(rng, 7, 4);
      for (const auto& u : us) {
        QuartInt a = g * g * u;
        if (a.in_OF() || quart::sqrt_in_OK(a) || !seen.insert(quart::to_string(a)).second) continue;
        auto v = criteria::evaluate_conditions(a);
        if (v.preprocessed || (v.condition != criteria::Condition::case2 &&
                               v.condition != criteria::Condition::case3 && v.condition != criteria::Condition::case4))
          continue;
        auto B = quad::sqrt_in_OF(quart::norm_KF(a));
        if (!B) continue;
        ++instances;
        auto r = criteria::audit_square_ideal_generator(a, *B);
        bool ok = r.hypotheses_hold;
        for (const auto& item : r.items)
          if (item.item == "1" || item.item == "2" || item.item == "3" || item.item == "6" || item.item == "7")
            ok &= item.passed;
        audit_ok += ok;
      }
    }
    std::ostringstream d;
    d << "norm multiplicativity 10000 pairs, " << bad_mult << " bad; two-path norm 10000, " << bad_two_path
      << " bad; HNF under shuffles 1000, " << bad_hnf << " bad; odd norms = +-1 mod 8 " << odd_cases << ", "
      << bad_mod8 << " bad; audit items 1-3,6-7 " << audit_ok << "/" << instances << " instances";
    bool ok = bad_mult == 0 && bad_two_path == 0 && bad_hnf == 0 && bad_mod8 == 0 && instances >= 20 &&
              audit_ok == instances;
    return Line{ok, d.str()};
  });

  report(9, "no element of norm +-2", [&] {
    auto t0 = Clock::now();
    // the int64 formula against the exact norm on a sample
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
      QuartInt x = random_element(rng, 23, 50);
      if (BigInt(static_cast<long>(norm_int64(x.c[0].get_si(), x.c[1].get_si(), x.c[2].get_si(),
                                               x.c[3].get_si(), 23))) != quart::absolute_norm(x))
        return Line{false, "int64 norm formula disagrees with absolute_norm"};
    }
    std::ostringstream d;
    bool ok = true;
    for (std::int64_t p : {7, 23}) {
      std::size_t hits = 0, units = 0;
      for (std::int64_t a = -50; a <= 50; ++a)
        for (std::int64_t b = -50; b <= 50; ++b)
          for (std::int64_t c = -50; c <= 50; ++c)
            for (std::int64_t e = -50; e <= 50; ++e) {
              std::int64_t n = norm_int64(a, b, c, e, p);
              hits += n == 2 || n == -2;
              units += n == 1 || n == -1;
            }
      ok &= hits == 0 && units > 0;
      d << p << ": " << hits << " of norm +-2, " << units << " units among 101^4; ";
    }
    double t = since(t0);
    d << t << "s (limit " << kNormScanLimit << "s)";
    return Line{ok && t <= kNormScanLimit, d.str()};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
