#include <gtest/gtest.h>

#include <random>

#include "qck/error.hpp"
#include "qck/quadfield.hpp"

using namespace qck;
using namespace qck::quad;

namespace {

const std::vector<std::int64_t> kFieldPrimes{7, 23, 71, 103, 151, 167, 199, 263, 311, 359, 439, 727};

QuadInt rand_quad(std::mt19937_64& rng, std::int64_t p, long range) {
  auto r = [&] { return BigInt(static_cast<long>(rng() % (2 * range + 1)) - range); };
  return {r(), r(), p};
}

// Smallest b >= 1 with a^2 - p b^2 = 1 for some a, by direct scan.
QuadInt pell_scan(std::int64_t p, long max_b) {
  for (long b = 1; b <= max_b; ++b) {
    BigInt t = BigInt(p) * b * b + 1;
    if (arith::is_square(t)) return {arith::isqrt(t), b, p};
  }
  return {0, 0, p};
}

}  // namespace

TEST(QuadField, ValidateFieldPrime) {
  EXPECT_NO_THROW(validate_field_prime(7));
  EXPECT_NO_THROW(validate_field_prime(727));
  EXPECT_THROW(validate_field_prime(11), InvalidField);
  EXPECT_THROW(validate_field_prime(55), InvalidField);  // 55 = 7 mod 16 but composite
  try {
    validate_field_prime(11);
  } catch (const InvalidField& e) {
    EXPECT_NE(std::string(e.what()).find("7 (mod 16)"), std::string::npos);
  }
}

TEST(QuadField, NormExamples) {
  EXPECT_EQ(norm_F(QuadInt{8, 3, 7}), 1);
  EXPECT_EQ(norm_F(QuadInt{3, -1, 7}), 2);
  EXPECT_EQ(norm_F(QuadInt{1, 0, 7}), 1);
}

TEST(QuadField, NormIsMultiplicative) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t p = kFieldPrimes[rng() % kFieldPrimes.size()];
    QuadInt x = rand_quad(rng, p, 1000), y = rand_quad(rng, p, 1000);
    EXPECT_EQ(norm_F(x * y), norm_F(x) * norm_F(y));
  }
}

TEST(QuadField, SignIsExact) {
  EXPECT_EQ(sign(QuadInt{3, -1, 7}), 1);    // 3 - 2.645...
  EXPECT_EQ(sign(QuadInt{-3, 1, 7}), -1);
  EXPECT_EQ(sign(QuadInt{2, -1, 7}), -1);
  EXPECT_EQ(sign(QuadInt{0, 0, 7}), 0);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    QuadInt x = rand_quad(rng, 23, 10000);
    double v = approx(x);
    if (std::abs(v) > 1e-6) {
      EXPECT_EQ(sign(x), v > 0 ? 1 : -1);
    }
  }
}

TEST(QuadField, FundamentalUnitExamples) {
  EXPECT_EQ(fundamental_unit(7), (QuadInt{8, 3, 7}));
  EXPECT_EQ(fundamental_unit(23), (QuadInt{24, 5, 23}));
}

TEST(QuadField, FundamentalUnitMatchesPellScan) {
  for (std::int64_t p : {7, 23, 71, 103, 167, 359, 439, 727}) {
    QuadInt u = fundamental_unit(p);
    EXPECT_EQ(norm_F(u), 1) << p;
    QuadInt scan = pell_scan(p, 200000);
    if (scan.b != 0) {
      EXPECT_EQ(u, scan) << p;
    }
  }
  for (std::int64_t p = 7; p < 3000; p += 16) {
    if (arith::is_prime(BigInt(p))) {
      EXPECT_EQ(norm_F(fundamental_unit(p)), 1) << p;
    }
  }
}

TEST(QuadField, L2Identity) {
  L2Result r7 = compute_L2(7);
  EXPECT_EQ(r7.L2, (QuadInt{3, -1, 7}));
  EXPECT_EQ(r7.e, 1);
  EXPECT_EQ(norm_F(r7.L2), 2);
  for (std::int64_t p = 7; p < 3000; p += 16) {
    if (!arith::is_prime(BigInt(p))) continue;
    L2Result r = compute_L2(p);
    QuadInt U = fundamental_unit(p);
    EXPECT_EQ(abs(norm_F(r.L2)), 2) << p;
    EXPECT_GT(sign(r.L2), 0);
    QuadInt rhs = r.L2 * r.L2;
    rhs = r.e >= 0 ? rhs * pow(U, r.e) : rhs * pow(U.conj(), -r.e);
    EXPECT_EQ(rhs, QuadInt::rational(2, p)) << p;
  }
}

TEST(QuadField, SqrtInOF) {
  EXPECT_EQ(sqrt_in_OF(QuadInt{8, 2, 7}), (QuadInt{1, 1, 7}));
  EXPECT_EQ(sqrt_in_OF(QuadInt{4, 0, 7}), (QuadInt{2, 0, 7}));
  EXPECT_FALSE(sqrt_in_OF(QuadInt{1, 1, 7}).has_value());
  // exhaustive oracle on a small box
  for (long a = -30; a <= 30; ++a)
    for (long b = -10; b <= 10; ++b) {
      QuadInt x{a, b, 7};
      bool found = false;
      for (long c1 = -6; c1 <= 6 && !found; ++c1)
        for (long c2 = -3; c2 <= 3; ++c2)
          if (QuadInt(c1, c2, 7) * QuadInt(c1, c2, 7) == x) found = true;
      auto r = sqrt_in_OF(x);
      EXPECT_EQ(r.has_value(), found) << a << " " << b;
      if (r) {
        EXPECT_EQ(*r * *r, x);
      }
    }
  std::mt19937_64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t p = kFieldPrimes[rng() % kFieldPrimes.size()];
    QuadInt x = rand_quad(rng, p, 100000);
    auto r = sqrt_in_OF(x * x);
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(*r == x || *r == -x);
  }
}

TEST(QuadField, ClassNumber) {
  EXPECT_EQ(class_number_real_quadratic(7), 1);
  EXPECT_EQ(class_number_real_quadratic(23), 1);
  // Q(sqrt 79): h = 3, norm of the unit is +1, narrow class number 6
  EXPECT_EQ(reduced_form_cycles(316), 6);
  // Q(sqrt 2): h = 1, unit of norm -1 so the narrow class number is 1
  EXPECT_EQ(reduced_form_cycles(8), 1);
  for (std::int64_t p = 7; p < 4000; p += 16) {
    if (!arith::is_prime(BigInt(p))) continue;
    BigInt h = class_number_real_quadratic(p);
    EXPECT_EQ(h % 2, 1) << p;
  }
  EXPECT_THROW(class_number_real_quadratic(11), InvalidField);
}

TEST(QuadField, Parsing) {
  EXPECT_EQ(parse_quadint("8+3*s", 7), (QuadInt{8, 3, 7}));
  EXPECT_EQ(parse_quadint(" 3 - s ", 7), (QuadInt{3, -1, 7}));
  EXPECT_EQ(parse_quadint("-s^2+1", 7), (QuadInt{-6, 0, 7}));
  EXPECT_EQ(parse_quadint("r^2", 7), (QuadInt{0, 1, 7}));
  EXPECT_THROW(parse_quadint("r", 7), PreconditionError);
  EXPECT_THROW(parse_quadint("3*", 7), PreconditionError);
  EXPECT_THROW(parse_quadint("", 7), PreconditionError);
  EXPECT_EQ(to_string(QuadInt{3, -1, 7}), "3-s");
  EXPECT_EQ(parse_quadint(to_string(QuadInt{-12, 5, 7}), 7), (QuadInt{-12, 5, 7}));
}

TEST(QuadField, MixedContextsRejected) {
  EXPECT_THROW(QuadInt(1, 1, 7) * QuadInt(1, 1, 23), ContextMismatch);
}

TEST(QuadIdeal, RamifiedPrimeOverTwo) {
  QuadIdeal P2 = QuadIdeal::from_generators({{2, 0, 7}, {1, 1, 7}});
  EXPECT_EQ(P2.norm(), 2);
  EXPECT_EQ(P2 * P2, QuadIdeal::from_generators({{2, 0, 7}}));
  EXPECT_EQ(P2, QuadIdeal::from_generators({compute_L2(7).L2}));
}

TEST(QuadIdeal, PrimesAboveReconstructEll) {
  for (std::int64_t p : {7, 23, 71}) {
    for (long ell = 2; ell < 200; ++ell) {
      if (!arith::is_prime(BigInt(ell))) continue;
      auto ps = f_primes_above(BigInt(ell), p);
      QuadIdeal prod = QuadIdeal::unit(p);
      for (auto& P : ps) {
        unsigned e = P.type == FSplit::ramified ? 2 : 1;
        prod = prod * pow(P.ideal, e);
        EXPECT_EQ(P.ideal.norm(), P.type == FSplit::inert ? BigInt(ell * ell) : BigInt(ell));
      }
      EXPECT_EQ(prod, QuadIdeal::from_generators({{ell, 0, p}})) << p << " " << ell;
    }
  }
}

TEST(QuadIdeal, FactorPrincipalIdeals) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 300; ++i) {
    std::int64_t p = kFieldPrimes[rng() % 4];
    QuadInt x = rand_quad(rng, p, 60);
    if (x.is_zero()) continue;
    QuadIdeal A = QuadIdeal::from_generators({x});
    EXPECT_EQ(A.norm(), abs(norm_F(x)));
    EXPECT_TRUE(A.contains(x));
    auto fs = factor(A);  // internally re-multiplies and compares
    BigInt nprod = 1;
    for (auto& f : fs) nprod *= arith::pow(f.prime.ideal.norm(), f.exponent);
    EXPECT_EQ(nprod, A.norm());
  }
}

TEST(QuadIdeal, HnfCanonicalUnderUnits) {
  QuadInt x{5, 2, 7};
  QuadInt u = fundamental_unit(7);
  EXPECT_EQ(QuadIdeal::from_generators({x}), QuadIdeal::from_generators({x * u}));
  EXPECT_EQ(QuadIdeal::from_generators({x, {3, 0, 7}}), QuadIdeal::from_generators({{3, 0, 7}, x * u, -x}));
}

TEST(QuadIdeal, SumAndContainment) {
  QuadIdeal A = QuadIdeal::from_generators({{6, 0, 7}});
  QuadIdeal B = QuadIdeal::from_generators({{4, 0, 7}});
  EXPECT_EQ(A + B, QuadIdeal::from_generators({{2, 0, 7}}));
  EXPECT_TRUE((A + B).contains(A));
  EXPECT_FALSE(A.contains(A + B));
}
