#pragma once

// Rational-integer layer: big integers, primality, modular arithmetic,
// quadratic symbols and factorization of x^4 - p over prime fields.

#include <cstdint>
#include <gmpxx.h>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qck {

using BigInt = mpz_class;

namespace arith {

// Floor division/modulo for signed operands (GMP's '/' truncates).
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt mod(const BigInt& a, const BigInt& m);  // result in [0, |m|)
BigInt pow(const BigInt& base, unsigned long exp);
BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& m);
BigInt gcd(const BigInt& a, const BigInt& b);

// Extended gcd: returns g = gcd(a,b) >= 0 with u*a + v*b = g.
struct Xgcd {
  BigInt g, u, v;
};
Xgcd xgcd(const BigInt& a, const BigInt& b);

BigInt inv_mod(const BigInt& a, const BigInt& m);  // throws if not invertible

bool is_square(const BigInt& n);
BigInt isqrt(const BigInt& n);  // floor sqrt, n >= 0

bool fits_int64(const BigInt& n);
std::int64_t to_int64(const BigInt& n);  // throws on overflow

// Jacobi symbol (a/n) for odd n >= 1.  Throws PreconditionError otherwise.
int jacobi_symbol(const BigInt& a, const BigInt& n);

// Miller-Rabin with the first twelve prime bases: deterministic below
// 3.18e23.  Above that, 24 additional bases drawn from a fixed-seed
// generator are tried, giving an error probability below 4^-36 for any n.
bool is_prime(const BigInt& n);

BigInt next_prime(const BigInt& n);  // smallest prime > n

// Tonelli-Shanks.  q an odd prime and a a quadratic residue mod q.
BigInt sqrt_mod(const BigInt& a, const BigInt& q);

// Unique x in [0, prod) with x = r_i mod m_i.  Moduli must be pairwise
// coprime and positive.
struct Residue {
  BigInt value;
  BigInt modulus;
};
BigInt crt_combine(std::span<const Residue> residues);

// Complete factorization |n| = prod q^e by trial division then Pollard rho.
// Intended for the desk-scale norms that appear in this library.
std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n);

// Primes up to bound (sieve).
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

// ---------------------------------------------------------------------------
// Polynomials over Z/q, coefficients little-endian.

struct ModPoly {
  std::vector<BigInt> coeffs;  // coeffs[i] is the x^i coefficient, reduced mod q

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool operator==(const ModPoly&) const = default;
};

struct ModPolyFactor {
  ModPoly poly;  // monic, irreducible mod q
  unsigned multiplicity = 1;
};

struct ModPolyFactorization {
  BigInt modulus;
  std::vector<ModPolyFactor> factors;  // sorted by degree, then coefficients
};

ModPoly modpoly_mul(const ModPoly& a, const ModPoly& b, const BigInt& q);
BigInt modpoly_eval(const ModPoly& f, const BigInt& x, const BigInt& q);
std::string to_string(const ModPoly& f, char var = 'x');

// Factor x^4 - p over Z/q for a prime q not dividing 2p.  Roots come from
// two square-root extractions; a leftover quadratic is split (or declared
// irreducible) by its discriminant.
ModPolyFactorization factor_quartic_mod_q(const BigInt& p, const BigInt& q);

}  // namespace arith
}  // namespace qck
