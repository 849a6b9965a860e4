#include "qck/arith.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "qck/error.hpp"

namespace qck::arith {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt pow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

BigInt pow_mod(const BigInt& base, const BigInt& exp, const BigInt& m) {
  if (exp < 0) throw PreconditionError("pow_mod: negative exponent");
  BigInt r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Xgcd xgcd(const BigInt& a, const BigInt& b) {
  Xgcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.u.get_mpz_t(), r.v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt inv_mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PreconditionError("inv_mod: " + a.get_str() + " not invertible mod " + m.get_str());
  return r;
}

bool is_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw PreconditionError("isqrt of negative number");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool fits_int64(const BigInt& n) { return mpz_fits_slong_p(n.get_mpz_t()) != 0; }

std::int64_t to_int64(const BigInt& n) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  if (!fits_int64(n)) throw ResourceLimit("integer does not fit in 64 bits: " + n.get_str());
  return n.get_si();
}

int jacobi_symbol(const BigInt& a_in, const BigInt& n_in) {
  if (n_in <= 0 || mpz_even_p(n_in.get_mpz_t()))
    throw PreconditionError("jacobi_symbol: modulus must be odd and positive, got " + n_in.get_str());
  BigInt a = mod(a_in, n_in);
  BigInt n = n_in;
  int t = 1;
  while (a != 0) {
    unsigned long z = mpz_scan1(a.get_mpz_t(), 0);
    if (z > 0) {
      a >>= z;
      unsigned long n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if ((z & 1) && (n8 == 3 || n8 == 5)) t = -t;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) t = -t;
    a = mod(a, n);
  }
  return n == 1 ? t : 0;
}

namespace {

bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned long s, const BigInt& base) {
  BigInt a = mod(base, n);
  if (a == 0) return true;
  BigInt x = pow_mod(a, d, n);
  BigInt nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

constexpr unsigned kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  for (unsigned sp : kSmallPrimes) {
    if (n == sp) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp)) return false;
  }
  BigInt d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  for (unsigned sp : kSmallPrimes)
    if (!miller_rabin_round(n, d, s, BigInt(sp))) return false;
  static const BigInt kDeterministicLimit("318665857834031151167461");
  if (n < kDeterministicLimit) return true;
  std::mt19937_64 rng(0x5eed5eedULL);
  gmp_randclass gr(gmp_randinit_default);
  gr.seed(rng());
  for (int i = 0; i < 24; ++i) {
    BigInt base = gr.get_z_range(n - 3) + 2;
    if (!miller_rabin_round(n, d, s, base)) return false;
  }
  return true;
}

BigInt next_prime(const BigInt& n) {
  BigInt c = n + 1;
  if (c <= 2) return 2;
  if (mpz_even_p(c.get_mpz_t())) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

BigInt sqrt_mod(const BigInt& a_in, const BigInt& q) {
  BigInt a = mod(a_in, q);
  if (a == 0) return 0;
  if (q == 2) return a;
  if (jacobi_symbol(a, q) != 1)
    throw PreconditionError("sqrt_mod: " + a.get_str() + " is not a square mod " + q.get_str());
  // q - 1 = t * 2^s
  BigInt t = q - 1;
  unsigned long s = mpz_scan1(t.get_mpz_t(), 0);
  t >>= s;
  if (s == 1) return pow_mod(a, (q + 1) / 4, q);
  BigInt z = 2;
  while (jacobi_symbol(z, q) != -1) ++z;
  BigInt c = pow_mod(z, t, q);
  BigInt x = pow_mod(a, (t + 1) / 2, q);
  BigInt b = pow_mod(a, t, q);
  unsigned long m = s;
  while (b != 1) {
    unsigned long i = 0;
    BigInt bb = b;
    while (bb != 1) {
      bb = bb * bb % q;
      ++i;
    }
    BigInt w = c;
    for (unsigned long k = 0; k + 1 < m - i; ++k) w = w * w % q;
    x = x * w % q;
    c = w * w % q;
    b = b * c % q;
    m = i;
  }
  return x;
}

BigInt crt_combine(std::span<const Residue> residues) {
  BigInt x = 0, m = 1;
  for (const auto& r : residues) {
    if (r.modulus <= 0) throw PreconditionError("crt_combine: moduli must be positive");
    if (gcd(m, r.modulus) != 1)
      throw PreconditionError("crt_combine: moduli are not pairwise coprime");
    // x' = x + m * k with x + m k = r (mod r.modulus)
    BigInt k = mod((r.value - x) * inv_mod(m, r.modulus), r.modulus);
    x += m * k;
    m *= r.modulus;
  }
  return mod(x, m);
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

namespace {

BigInt pollard_brent(const BigInt& n, std::uint64_t seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(seed);
  for (;;) {
    BigInt y = BigInt(static_cast<unsigned long>(rng() % 1000003)) % n;
    BigInt c = BigInt(static_cast<unsigned long>(rng() % 1000003 + 1)) % n;
    const unsigned long m = 128;
    BigInt g = 1, q = 1, x, ys;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(const BigInt& n, std::vector<BigInt>& out, std::uint64_t seed) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (is_square(n)) {
    BigInt s = isqrt(n);
    factor_rec(s, out, seed);
    factor_rec(s, out, seed);
    return;
  }
  BigInt d = pollard_brent(n, seed);
  factor_rec(d, out, seed + 1);
  factor_rec(n / d, out, seed + 2);
}

}  // namespace

std::vector<std::pair<BigInt, unsigned>> factor_integer(const BigInt& n_in) {
  if (n_in == 0) throw PreconditionError("factor_integer: zero has no factorization");
  BigInt n = abs(n_in);
  std::vector<BigInt> primes;
  static const std::vector<std::int64_t> small = primes_up_to(20000);
  for (std::int64_t q : small) {
    if (n == 1) break;
    if (BigInt(q) * q > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(q))) {
      primes.emplace_back(q);
      n /= q;
    }
  }
  factor_rec(n, primes, 12345);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<BigInt, unsigned>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q)
      ++out.back().second;
    else
      out.emplace_back(q, 1u);
  }
  return out;
}

}  // namespace qck::arith
