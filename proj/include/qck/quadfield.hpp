#pragma once

// Arithmetic in F = Q(sqrt p) and O_F = Z[sqrt p] for primes p = 3 mod 4.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qck/arith.hpp"

namespace qck::quad {

// Throws InvalidField unless p is a prime with p = 7 (mod 16).
void validate_field_prime(std::int64_t p);

// a + b*sqrt(p)
struct QuadInt {
  BigInt a, b;
  std::int64_t p = 0;

  QuadInt() = default;
  QuadInt(BigInt a_, BigInt b_, std::int64_t p_) : a(std::move(a_)), b(std::move(b_)), p(p_) {}
  static QuadInt rational(const BigInt& a, std::int64_t p) { return {a, 0, p}; }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
  QuadInt conj() const { return {a, -b, p}; }
  QuadInt operator-() const { return {-a, -b, p}; }
  bool operator==(const QuadInt& o) const { return a == o.a && b == o.b && p == o.p; }
};

QuadInt operator+(const QuadInt& x, const QuadInt& y);
QuadInt operator-(const QuadInt& x, const QuadInt& y);
QuadInt operator*(const QuadInt& x, const QuadInt& y);
QuadInt operator*(const QuadInt& x, const BigInt& k);
QuadInt pow(const QuadInt& x, unsigned n);

BigInt norm_F(const QuadInt& x);   // a^2 - p b^2
BigInt trace_F(const QuadInt& x);  // 2a
int sign(const QuadInt& x);        // exact sign of a + b sqrt(p) as a real number

// x / y when the quotient lies in O_F.
std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y);
bool divides(const QuadInt& y, const QuadInt& x);

// Real value (double precision) for display and ordering heuristics only.
double approx(const QuadInt& x);

// Fundamental unit U_F > 1 (continued fraction of sqrt p).  Norm +1 asserted.
QuadInt fundamental_unit(std::int64_t p);

// L2 > 0 with 2 = L2^2 * U_F^e.
struct L2Result {
  QuadInt L2;
  int e = 0;
};
L2Result compute_L2(std::int64_t p);

// C with C^2 = x, chosen with C >= 0 under sqrt(p) > 0; absent if x is not a square in O_F.
std::optional<QuadInt> sqrt_in_OF(const QuadInt& x);

// h_F by counting rho-cycles of reduced forms of discriminant 4p.
inline constexpr std::int64_t kClassNumberBound = 10'000'000;
BigInt class_number_real_quadratic(std::int64_t p);
// Number of rho-cycles of primitive reduced indefinite forms of nonsquare
// discriminant D > 0, i.e. the narrow class number of that discriminant.
std::int64_t reduced_form_cycles(std::int64_t D);

std::string to_string(const QuadInt& x);

// Literal parsing shared with the quartic layer: a sum of integer multiples
// of r^k (k >= 0) and s^k (s = r^2).  Returns exponent-of-r -> coefficient.
std::map<unsigned, BigInt> parse_terms(const std::string& text);
QuadInt parse_quadint(const std::string& text, std::int64_t p);

// ---------------------------------------------------------------------------
// Integral ideals of O_F as 2x2 HNF over {1, sqrt p}: columns (a, 0) and (b, c),
// with c | a, c | b and 0 <= b < a.
struct QuadIdeal {
  BigInt a, b, c;
  std::int64_t p = 0;

  static QuadIdeal from_generators(const std::vector<QuadInt>& gens);
  static QuadIdeal unit(std::int64_t p) { return {1, 0, 1, p}; }

  BigInt norm() const { return a * c; }
  bool contains(const QuadInt& x) const;
  bool contains(const QuadIdeal& o) const;  // o subset of this
  bool is_unit() const { return a == 1 && c == 1; }
  bool operator==(const QuadIdeal& o) const { return a == o.a && b == o.b && c == o.c && p == o.p; }
  std::vector<QuadInt> basis() const;
};

QuadIdeal operator*(const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal operator+(const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal pow(const QuadIdeal& x, unsigned n);
std::string to_string(const QuadIdeal& x);

enum class FSplit { ramified, split, inert };

struct FPrime {
  QuadIdeal ideal;
  BigInt ell;  // rational prime below
  FSplit type = FSplit::inert;
};

// The prime ideals of O_F above a rational prime ell.
std::vector<FPrime> f_primes_above(const BigInt& ell, std::int64_t p);

// Largest k with P^k containing A (A nonzero).
unsigned valuation(const QuadIdeal& A, const FPrime& P);

// Full prime factorization of a nonzero ideal.
struct FFactor {
  FPrime prime;
  unsigned exponent = 0;
};
std::vector<FFactor> factor(const QuadIdeal& A);

}  // namespace qck::quad
