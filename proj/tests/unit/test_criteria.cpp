#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qck/criteria.hpp"
#include "qck/error.hpp"

using namespace qck;
using namespace qck::criteria;
using quart::parse_quartint;

namespace {

QuartInt Q(const std::string& s, std::int64_t p = 7) { return parse_quartint(s, p); }

QuartInt rand_quart(std::mt19937_64& rng, std::int64_t p, long range) {
  auto r = [&] { return BigInt(static_cast<long>(rng() % (2 * range + 1)) - range); };
  return {r(), r(), r(), r(), p};
}

using Res4 = std::array<long, 4>;
Res4 mod4(const QuartInt& x) {
  Res4 r;
  for (int i = 0; i < 4; ++i) r[i] = arith::mod(x.c[i], BigInt(4)).get_si();
  return r;
}

// Local test at the prime above 2: K(sqrt(alpha))/K is unramified there iff
// alpha, scaled by an even power of a local uniformizer to a 2-adic unit, is a
// square modulo 4 O_K (4 O_K is the 8th power of that prime).  Brute force
// over O_K / 4 O_K.
bool locally_unramified_at_2(const QuartInt& alpha) {
  const std::int64_t p = alpha.p;
  std::set<Res4> squares;
  for (long a = 0; a < 4; ++a)
    for (long b = 0; b < 4; ++b)
      for (long c = 0; c < 4; ++c)
        for (long d = 0; d < 4; ++d) {
          QuartInt x{a, b, c, d, p};
          squares.insert(mod4(x * x));
        }
  auto P2 = ideals::dedekind_factor_rational_prime(2, p).at(0);
  int v = ideals::valuation(Ideal::principal(alpha), P2);
  if (v % 2) return false;
  // 1 + r has valuation 1 at P2 and norm 1 - p = 2 * odd, so its cofactor
  // N(1+r)/(1+r) has valuation 3 and no other prime above 2.
  QuartInt beta{1, 1, 0, 0, p};
  QuartInt bstar = *quart::exact_div(QuartInt::rational(quart::absolute_norm(beta), p), beta);
  QuartInt u = alpha * quart::pow(bstar, static_cast<unsigned>(v));
  for (int i = 0; i < v / 2; ++i) u = *quart::exact_div(u, QuartInt::rational(4, p));
  return squares.count(mod4(u)) > 0;
}

}  // namespace

TEST(Classify, Examples) {
  auto uf = classify_ramification_at_2(Q("8+3s"));
  EXPECT_EQ(uf.condition, Condition::unit_case);
  EXPECT_EQ(classify_ramification_at_2(Q("1+r")).condition, Condition::none);
  EXPECT_EQ(evaluate_conditions(Q("1+r")).norm, -6);

  // 1 + 2r + sqrt7 = (1+r)^2: the congruences are those of case 2 but the
  // extension is trivial
  auto v = evaluate_conditions(Q("1+2r+s"));
  EXPECT_EQ(v.condition, Condition::case2);
  EXPECT_EQ(v.norm, 36);
  EXPECT_THROW(classify_ramification_at_2(Q("1+2r+s")), PreconditionError);
  EXPECT_THROW(classify_ramification_at_2(Q("0")), PreconditionError);
  EXPECT_THROW(classify_ramification_at_2(Q("4")), PreconditionError);
}

TEST(Classify, Preprocessing) {
  // a3 odd, the rest even: multiplied by sqrt(p) first
  auto v = evaluate_conditions(Q("2+s"));
  EXPECT_TRUE(v.preprocessed);
  EXPECT_EQ(v.alpha, Q("2+s") * Q("s"));
  EXPECT_FALSE(evaluate_conditions(Q("1+s")).preprocessed);
}

TEST(Classify, EvidenceRecomputable) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 300; ++i) {
    QuartInt a = rand_quart(rng, 7, 12);
    if (a.is_zero()) continue;
    auto v = evaluate_conditions(a);
    if (v.condition == Condition::unit_case) continue;
    EXPECT_EQ(v.norm, quart::absolute_norm(v.alpha));
    for (const auto& e : v.evidence) {
      BigInt x;
      if (e.quantity == "N(alpha)") x = v.norm;
      else if (e.quantity == "a1") x = v.alpha.c[0];
      else if (e.quantity == "a2") x = v.alpha.c[1];
      else if (e.quantity == "a3") x = v.alpha.c[2];
      else if (e.quantity == "a4") x = v.alpha.c[3];
      else if (e.quantity == "a1+a3") x = v.alpha.c[0] + v.alpha.c[2];
      else FAIL() << e.quantity;
      EXPECT_EQ(arith::mod(x, e.modulus), e.value);
    }
  }
}

TEST(Classify, AgreesWithLocalSquareTest) {
  // The conditions only cover alpha whose valuation at the prime above 2 is
  // below 4; beyond that (alpha = 2, say) they can miss unramified cases.
  std::mt19937_64 rng(42);
  for (std::int64_t p : {7, 23}) {
    auto P2 = ideals::dedekind_factor_rational_prime(2, p).at(0);
    int hits = 0, n = 0;
    while (n < 1500) {
      QuartInt a = rand_quart(rng, p, 10);
      if (a.is_zero() || quart::sqrt_in_OK(a)) continue;
      if (ideals::valuation(Ideal::principal(a), P2) >= 4) continue;
      ++n;
      bool claim = classify_ramification_at_2(a).condition != Condition::none;
      EXPECT_EQ(claim, locally_unramified_at_2(a)) << quart::to_string(a);
      hits += claim;
    }
    EXPECT_GT(hits, 50);
  }
  EXPECT_TRUE(locally_unramified_at_2(Q("8+3s")));
}

TEST(Classify, InvariantUnderUnitSquares) {
  std::mt19937_64 rng(43);
  auto units = quart::Field::get(7)->units();
  std::vector<QuartInt> sq = {units.mu1 * units.mu1, units.mu2 * units.mu2,
                              quart::pow_signed(units.mu1, -2) * units.mu2 * units.mu2};
  int nontrivial = 0, swapped = 0;
  for (int i = 0; i < 400; ++i) {
    QuartInt a = rand_quart(rng, 7, 8);
    if (a.is_zero() || quart::sqrt_in_OK(a)) continue;
    auto c = classify_ramification_at_2(a).condition;
    nontrivial += c != Condition::none;
    // the extension only sees alpha modulo squares, so whether 2 ramifies
    // completely is invariant; the labels of cases 2 and 3 may trade places
    for (const auto& s : sq) {
      auto d = classify_ramification_at_2(a * s).condition;
      EXPECT_EQ(d == Condition::none, c == Condition::none) << quart::to_string(a);
      EXPECT_EQ(d == Condition::case4, c == Condition::case4) << quart::to_string(a);
      if (c == Condition::case2 || c == Condition::case3) {
        EXPECT_TRUE(d == Condition::case2 || d == Condition::case3) << quart::to_string(a);
        swapped += d != c;
      }
    }
  }
  EXPECT_GT(swapped, 0);
  EXPECT_GT(nontrivial, 10);
  QuartInt uf = Q("8+3s");
  for (const auto& s : sq) EXPECT_EQ(classify_ramification_at_2(uf * s).condition, Condition::unit_case);
}

TEST(Normalize, Examples) {
  auto units = quart::Field::get(7)->units();
  QuartInt x = Q("1+2r+s") * units.mu1 * units.mu1;
  auto n = normalize_to_square_norm(x);
  EXPECT_EQ(Ideal::principal(n.beta), Ideal::principal(x));
  EXPECT_EQ(quart::norm_KF(n.beta), n.B * n.B);
  if (!n.divided_by_mu2) {
    EXPECT_TRUE(n.B == quad::parse_quadint("1-s", 7) || n.B == quad::parse_quadint("-1+s", 7));
  }

  // L2^2 lies in O_F and gets multiplied by mu1^2
  QuadInt L2 = quart::Field::get(7)->L2().L2;
  auto m = normalize_to_square_norm(QuartInt::from_quad(L2 * L2));
  EXPECT_TRUE(m.premultiplied);
  EXPECT_FALSE(m.beta.in_OF());
  EXPECT_EQ(quart::norm_KF(m.beta), m.B * m.B);
  EXPECT_THROW(normalize_to_square_norm(Q("0")), PreconditionError);
}

TEST(Normalize, SquaresAndUnitMultiples) {
  std::mt19937_64 rng(44);
  auto units = quart::Field::get(7)->units();
  for (int i = 0; i < 100; ++i) {
    QuartInt g = rand_quart(rng, 7, 9);
    if (g.is_zero() || g.in_OF()) continue;
    QuartInt a = g * g;
    if (a.in_OF()) continue;
    auto n = normalize_to_square_norm(a);
    EXPECT_EQ(n.beta, a);
    EXPECT_FALSE(n.divided_by_mu2);
    EXPECT_TRUE(n.B == quart::norm_KF(g) || n.B == quart::norm_KF(g) * BigInt(-1));
    // a mu2 has norm a square times U_F, which is not a square
    auto m = normalize_to_square_norm(a * units.mu2);
    EXPECT_TRUE(m.divided_by_mu2);
    EXPECT_EQ(m.beta, a);
  }
}

namespace {

// Instances alpha = gamma^2 u with u in {-1, mu1, -mu1, U_F, ...} that fall
// into cases 2-4, so that <alpha> = <gamma>^2 with <gamma> principal.
std::vector<std::pair<QuartInt, QuadInt>> audit_instances(std::int64_t p, std::size_t want) {
  std::mt19937_64 rng(45);
  auto field = quart::Field::get(p);
  auto units = field->units();
  QuartInt minus1 = QuartInt::rational(-1, p), uf = QuartInt::from_quad(field->U_F());
  std::vector<QuartInt> us = {minus1, units.mu1, units.mu1 * minus1, uf, uf * minus1, uf * units.mu1};
  std::vector<std::pair<QuartInt, QuadInt>> out;
  std::set<std::string> seen;
  for (int it = 0; it < 200000 && out.size() < want; ++it) {
    QuartInt g = rand_quart(rng, p, 4);
    if (g.is_zero()) continue;
    for (const auto& u : us) {
      QuartInt a = g * g * u;
      if (a.in_OF() || quart::sqrt_in_OK(a)) continue;
      auto v = evaluate_conditions(a);
      if (v.preprocessed || (v.condition != Condition::case2 && v.condition != Condition::case3 &&
                             v.condition != Condition::case4))
        continue;
      auto B = quad::sqrt_in_OF(quart::norm_KF(a));
      if (!B || !seen.insert(quart::to_string(a)).second) continue;
      out.emplace_back(a, *B);
    }
  }
  return out;
}

}  // namespace

TEST(Audit, ConstructedInstancesPass) {
  auto inst = audit_instances(7, 24);
  ASSERT_GE(inst.size(), 20u);
  std::set<Condition> conds;
  for (const auto& [a, B] : inst) {
    auto rep = audit_square_ideal_generator(a, B);
    ASSERT_TRUE(rep.hypotheses_hold) << quart::to_string(a);
    conds.insert(rep.condition);
    EXPECT_EQ(rep.items.size(), 8u);
    for (const auto& item : rep.items) EXPECT_TRUE(item.passed) << quart::to_string(a) << " item " << item.item << ": " << item.detail;
    ASSERT_TRUE(rep.I);
    EXPECT_EQ(pow(*rep.I, 2), Ideal::principal(a));
    // the sign of B does not matter
    EXPECT_TRUE(audit_square_ideal_generator(a, B * BigInt(-1)).passed());
  }
  EXPECT_EQ(conds.size(), 3u);
}

TEST(OddValuation, Examples) {
  // <1+r> = P2 * (prime of norm 3)
  auto r = audit_odd_valuation_ramification(Q("1+r"));
  ASSERT_EQ(r.primes.size(), 2u);
  std::set<BigInt> qs;
  for (const auto& o : r.primes) {
    EXPECT_EQ(o.valuation, 1);
    EXPECT_TRUE(o.ramified);
    qs.insert(o.prime.q);
  }
  EXPECT_EQ(qs, (std::set<BigInt>{2, 3}));
  EXPECT_EQ(r.primes[0].prime.q == 2 ? r.primes[0].disc_valuation : r.primes[1].disc_valuation, 9);
  EXPECT_FALSE(r.alpha_ideal_square);

  EXPECT_TRUE(audit_odd_valuation_ramification(Q("1+2r+s")).alpha_ideal_square);
  EXPECT_TRUE(audit_odd_valuation_ramification(Q("8+3s")).alpha_ideal_square);
  EXPECT_EQ(audit_odd_valuation_ramification(Q("r")).primes.size(), 1u);
  EXPECT_THROW(audit_odd_valuation_ramification(Q("0")), PreconditionError);
}

TEST(OddValuation, RamifiedPrimesForceCompleteRamificationAtTwo) {
  // an odd valuation at the prime above 2 means 2 ramifies completely, so the
  // classifier must answer none
  std::mt19937_64 rng(47);
  int odd2 = 0;
  for (int i = 0; i < 300; ++i) {
    QuartInt a = rand_quart(rng, 7, 9);
    if (a.is_zero() || quart::sqrt_in_OK(a)) continue;
    auto r = audit_odd_valuation_ramification(a);
    for (const auto& o : r.primes) {
      EXPECT_TRUE(o.ramified);
      EXPECT_EQ(valuation(Ideal::principal(a), o.prime) % 2, 1);
      if (o.prime.q == 2) {
        ++odd2;
        EXPECT_EQ(classify_ramification_at_2(a).condition, Condition::none) << quart::to_string(a);
      }
    }
  }
  EXPECT_GT(odd2, 20);
}

TEST(Audit, HypothesisViolations) {
  auto bad = audit_square_ideal_generator(Q("1+r"), quad::parse_quadint("1", 7));
  EXPECT_FALSE(bad.hypotheses_hold);
  EXPECT_FALSE(bad.passed());
  EXPECT_TRUE(bad.items.empty());
  EXPECT_GE(bad.hypothesis_failures.size(), 2u);

  auto inst = audit_instances(7, 1);
  ASSERT_FALSE(inst.empty());
  auto wrongB = audit_square_ideal_generator(inst[0].first, inst[0].second + quad::parse_quadint("2", 7));
  EXPECT_FALSE(wrongB.hypotheses_hold);
  ASSERT_EQ(wrongB.hypothesis_failures.size(), 1u);
  EXPECT_EQ(wrongB.hypothesis_failures[0], "norm_KF(alpha) != B^2");

  auto inF = audit_square_ideal_generator(Q("9"), quad::parse_quadint("9", 7));
  EXPECT_FALSE(inF.hypotheses_hold);
}

TEST(Audit, NonPrincipalSquareRootsNeverQualify) {
  // I = <3, 1+r> is not principal; generators of I^2 gamma^2 times units
  // must never meet the hypotheses of the audit.
  const std::int64_t p = 7;
  Ideal I = Ideal::from_generators({Q("3"), Q("1+r")});
  ASSERT_FALSE(ideals::find_generator(I));
  auto g = ideals::find_generator(I * I);
  ASSERT_TRUE(g);
  auto units = quart::Field::get(p)->units();
  std::mt19937_64 rng(46);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    QuartInt gam = i == 0 ? Q("1") : rand_quart(rng, p, 3);
    if (gam.is_zero()) continue;
    for (long s : {1L, -1L})
      for (long e1 = -2; e1 <= 2; ++e1)
        for (long e2 = -2; e2 <= 2; ++e2) {
          QuartInt a = *g * gam * gam * quart::pow_signed(units.mu1, e1) * quart::pow_signed(units.mu2, e2) * BigInt(s);
          if (a.in_OF() || !quad::sqrt_in_OF(quart::norm_KF(a))) continue;
          auto c = evaluate_conditions(a).condition;
          EXPECT_TRUE(c == Condition::none || c == Condition::unit_case) << quart::to_string(a);
          ++checked;
        }
  }
  EXPECT_GT(checked, 100);
}

TEST(Oracle, Examples) {
  auto three = ideals::dedekind_factor_rational_prime(3, 7);
  for (const auto& P : three) {
    auto v = class_order_parity_oracle(P.ideal, BigInt(2));
    if (P.f == 1) {
      EXPECT_EQ(v.residue_mod_8, 3);
      EXPECT_FALSE(v.order_odd);
      EXPECT_EQ(v.principal, false);
    } else {
      EXPECT_EQ(v.ideal_norm, 9);
      EXPECT_EQ(v.residue_mod_8, 1);
      EXPECT_EQ(v.principal, true);
    }
  }
  for (long a : {1, 3, 5, 7, 9, 11, 13, 15, 101}) {
    auto v = class_order_parity_oracle(Ideal::principal(QuartInt::rational(a, 7)));
    EXPECT_EQ(v.residue_mod_8, 1);
    EXPECT_TRUE(v.order_odd);
    EXPECT_FALSE(v.principal);
  }
  EXPECT_FALSE(class_order_parity_oracle(Ideal::principal(Q("r")), BigInt(6)).principal);
  EXPECT_THROW(class_order_parity_oracle(Ideal::from_generators({Q("2"), Q("1+r")})), PreconditionError);
}

TEST(Oracle, AgreesWithGeneratorSearch) {
  const std::int64_t p = 7;
  const BigInt bound = quart::minkowski_bound(p);
  int n = 0;
  for (std::int64_t q : arith::primes_up_to(bound.get_si())) {
    if (q == 2) continue;
    for (const auto& P : ideals::dedekind_factor_rational_prime(q, p)) {
      if (P.norm() > bound) continue;
      auto v = class_order_parity_oracle(P.ideal, BigInt(2));
      EXPECT_EQ(*v.principal, ideals::find_generator(P.ideal).has_value()) << q << " f=" << P.f;
      EXPECT_EQ(v.order_odd, v.residue_mod_8 == 1 || v.residue_mod_8 == 7);
      ++n;
    }
  }
  EXPECT_GT(n, 8);
}

TEST(Witness, SevenGivesThree) {
  auto w = construct_witness_prime(7);
  EXPECT_EQ(w.q, 3);
  EXPECT_EQ(w.nonresidue, 3);
  EXPECT_EQ(w.modulus, 56);
  EXPECT_EQ(w.residue_class, 3);
  EXPECT_THROW(construct_witness_prime(11), InvalidField);
}

TEST(Witness, CongruencesRecheckedIndependently) {
  auto trial_prime = [](long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  // Euler's criterion by repeated multiplication
  auto nonresidue = [](long a, long p) {
    long r = 1, b = a % p;
    for (long e = 0; e < (p - 1) / 2; ++e) r = r * b % p;
    return r == p - 1;
  };
  for (std::int64_t p : {7, 23, 71, 103, 151, 167, 199, 263, 311, 359, 439, 487, 727, 1543, 2711}) {
    auto w = construct_witness_prime(p);
    long q = w.q.get_si();
    EXPECT_EQ(q % 8, 3);
    EXPECT_TRUE(trial_prime(q));
    EXPECT_TRUE(nonresidue(q, p));
    for (long c = 3; c < q; c += 8) EXPECT_FALSE(trial_prime(c) && nonresidue(c, p)) << p << " " << c;
    EXPECT_EQ(w.residue_class % 8, 3);
    EXPECT_EQ(w.residue_class % p, q % p);
    int norm_q = 0;
    for (const auto& P : ideals::dedekind_factor_rational_prime(w.q, p)) norm_q += P.norm() == w.q;
    EXPECT_GE(norm_q, 2) << p;
  }
}

TEST(Hilbert, FieldsWithClassNumberTwo) {
  for (std::int64_t p : {7, 23}) {
    auto r = hilbert_class_field_check(p, 2);
    EXPECT_TRUE(r.verified()) << p;
    EXPECT_TRUE(r.two_is_L2_squared_UF);
    EXPECT_TRUE(r.uf_unit_case);
    EXPECT_TRUE(r.uf_ideal_trivial);
    EXPECT_TRUE(r.two_not_square);
  }
  EXPECT_EQ(hilbert_class_field_check(7, 2).verdict, "H_K = K(sqrt(2)) = Q(7^(1/4), sqrt(2))");
  // 2 and U_F generate the same extension
  EXPECT_TRUE(locally_unramified_at_2(Q("8+3s")));
}

TEST(Hilbert, PreconditionUnmet) {
  auto r = hilbert_class_field_check(359, 6);
  EXPECT_FALSE(r.precondition);
  EXPECT_FALSE(r.verified());
  EXPECT_NE(r.verdict.find("precondition unmet"), std::string::npos);
  EXPECT_TRUE(r.two_is_L2_squared_UF);
}
