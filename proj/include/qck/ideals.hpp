#pragma once

// Integral ideals of O_K = Z[r] as 4x4 Hermite normal forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qck/intmat.hpp"
#include "qck/quartfield.hpp"

namespace qck::ideals {

using quart::QuartInt;

// Columns are a Z-basis over (1, r, r^2, r^3).  The matrix is upper
// triangular with positive diagonal and H(i,j) in [0, H(i,i)) for j > i.
class Ideal {
 public:
  // HNF of the Z-span of g r^k (g in gens, 0 <= k < 4).  Throws
  // PreconditionError when every generator is zero.
  static Ideal from_generators(const std::vector<QuartInt>& gens);
  static Ideal principal(const QuartInt& x) { return from_generators({x}); }
  static Ideal unit(std::int64_t p);
  // Validates shape and closure under multiplication by r.
  static Ideal from_hnf(const arith::IntMatrix& h, std::int64_t p);
  // For matrices already known to be the HNF of an ideal.
  static Ideal from_hnf_unchecked(arith::IntMatrix h, std::int64_t p) { return Ideal(std::move(h), p); }

  std::int64_t p() const { return p_; }
  const arith::IntMatrix& hnf() const { return h_; }
  const BigInt& norm() const { return norm_; }
  // Least positive rational integer in the ideal.
  const BigInt& min_integer() const { return h_(0, 0); }
  std::vector<QuartInt> basis() const;
  bool is_unit() const { return norm_ == 1; }

  bool contains(const QuartInt& x) const;
  bool contains(const Ideal& b) const;  // b subset of this, i.e. this | b

  bool operator==(const Ideal& o) const { return p_ == o.p_ && h_ == o.h_; }
  bool operator<(const Ideal& o) const;  // arbitrary total order (by norm, then entries)

 private:
  Ideal(arith::IntMatrix h, std::int64_t p);
  arith::IntMatrix h_;
  BigInt norm_;
  std::int64_t p_ = 0;
};

Ideal operator*(const Ideal& a, const Ideal& b);
Ideal operator+(const Ideal& a, const Ideal& b);
Ideal pow(const Ideal& a, unsigned n);
Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_sum(const Ideal& a, const Ideal& b);

// N(a) * a^{-1}, an integral ideal.
Ideal scaled_inverse(const Ideal& a);
// a / b when b divides a.
std::optional<Ideal> divide(const Ideal& a, const Ideal& b);
// a / m for a rational integer m dividing every element of a.
std::optional<Ideal> divide(const Ideal& a, const BigInt& m);

std::string to_string(const Ideal& a);  // "[[h00,h01,..],[..],..]"

// ---------------------------------------------------------------------------
// Prime ideals.

struct PrimeIdealFactor {
  Ideal ideal;
  BigInt q;          // rational prime below
  int f = 1;         // residue degree
  int e = 1;         // ramification index
  int exponent = 1;  // exponent in the factorization it came from
  std::vector<BigInt> poly;  // monic factor of x^4 - p mod q, little-endian

  BigInt norm() const { return ideal.norm(); }
};

// <q> = prod P_i^{e_i} with P_i = <q, f_i(r)>.  The product is checked.
// Throws PreconditionError for composite q.
std::vector<PrimeIdealFactor> dedekind_factor_rational_prime(const BigInt& q, std::int64_t p);

// Largest k with P^k | a.  PreconditionError when P is not prime (norm not a
// prime power or not among the Dedekind factors of its prime).
int valuation(const Ideal& a, const PrimeIdealFactor& P);

// Prime factorization of a nonzero ideal; exponents in PrimeIdealFactor::exponent.
std::vector<PrimeIdealFactor> factor(const Ideal& a);

// ---------------------------------------------------------------------------
// Principality.

// Searches for gamma with <gamma> = a.  Cells cover a fundamental domain of
// the unit lattice spanned by the field's unit basis, so an empty search is a
// proof of non-principality.  Throws DeadlineExceeded when time runs out.
std::optional<QuartInt> find_generator(const Ideal& a, const Deadline& deadline = Deadline::never());

// Same search with the unit basis supplied by the caller (any two independent
// units will do).
std::optional<QuartInt> find_generator(const Ideal& a, const quart::UnitBasis& units, const Deadline& deadline);

}  // namespace qck::ideals
