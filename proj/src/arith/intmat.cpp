#include "qck/intmat.hpp"

#include <algorithm>
#include <cmath>

#include "qck/error.hpp"

namespace qck::arith {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<BigInt> IntMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw PreconditionError("IntMatrix: dimension mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const BigInt& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

namespace {

void reduce_row(IntRow& r, std::size_t from, const BigInt& m) {
  for (std::size_t j = from; j < r.size(); ++j)
    if (r[j] < 0 || r[j] >= m) r[j] = mod(r[j], m);
}

// Euclidean combination: afterwards a[c] = gcd, b[c] = 0.
void combine(IntRow& a, IntRow& b, std::size_t c) {
  Xgcd x = xgcd(a[c], b[c]);
  BigInt ac = a[c] / x.g, bc = b[c] / x.g;
  for (std::size_t j = c; j < a.size(); ++j) {
    BigInt na = x.u * a[j] + x.v * b[j];
    BigInt nb = ac * b[j] - bc * a[j];
    a[j] = std::move(na);
    b[j] = std::move(nb);
  }
}

void normalize_above(IntMatrix& w) {
  const std::size_t n = w.rows();
  for (std::size_t c = 0; c < n; ++c) {
    const BigInt& piv = w(c, c);
    for (std::size_t i = 0; i < c; ++i) {
      BigInt q = floor_div(w(i, c), piv);
      if (q == 0) continue;
      for (std::size_t j = c; j < n; ++j) w(i, j) -= q * w(c, j);
    }
  }
}

}  // namespace

IntMatrix hnf_mod(const std::vector<IntRow>& rows, std::size_t n, const BigInt& modulus) {
  if (modulus <= 0) throw PreconditionError("hnf_mod: modulus must be positive");
  BigInt R = modulus;
  std::vector<IntRow> work;
  work.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != n) throw PreconditionError("hnf_mod: row length mismatch");
    IntRow c = r;
    reduce_row(c, 0, R);
    if (std::any_of(c.begin(), c.end(), [](const BigInt& x) { return x != 0; })) work.push_back(std::move(c));
  }

  IntMatrix w(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    IntRow pivot;
    bool have = false;
    std::vector<IntRow> next;
    next.reserve(work.size());
    for (auto& r : work) {
      if (r[c] == 0) {
        next.push_back(std::move(r));
        continue;
      }
      if (!have) {
        pivot = std::move(r);
        have = true;
        continue;
      }
      combine(pivot, r, c);
      reduce_row(pivot, c + 1, R);
      reduce_row(r, c + 1, R);
      if (std::any_of(r.begin() + static_cast<std::ptrdiff_t>(c + 1), r.end(),
                      [](const BigInt& x) { return x != 0; }))
        next.push_back(std::move(r));
    }
    work = std::move(next);

    BigInt a = have ? pivot[c] : BigInt(0);
    Xgcd x = xgcd(a, R);
    if (have) {
      for (std::size_t j = c + 1; j < n; ++j) w(c, j) = mod(x.u * pivot[j], R);
    }
    w(c, c) = x.g;  // gcd(a, R); equals R when no pivot row exists
    R /= x.g;
    if (R == 0) throw InternalError("hnf_mod: modulus exhausted");
    // Rows surviving to later columns are reduced by the shrunken modulus.
    for (auto& r : work) reduce_row(r, c + 1, R);
  }
  normalize_above(w);
  return w;
}

IntMatrix hnf(const std::vector<IntRow>& rows, std::size_t n) {
  std::vector<IntRow> work;
  for (const auto& r : rows) {
    if (r.size() != n) throw PreconditionError("hnf: row length mismatch");
    if (std::any_of(r.begin(), r.end(), [](const BigInt& x) { return x != 0; })) work.push_back(r);
  }
  std::vector<IntRow> out;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < n && !work.empty(); ++c) {
    IntRow pivot;
    bool have = false;
    std::vector<IntRow> next;
    for (auto& r : work) {
      if (r[c] == 0) {
        next.push_back(std::move(r));
        continue;
      }
      if (!have) {
        pivot = std::move(r);
        have = true;
        continue;
      }
      combine(pivot, r, c);
      if (std::any_of(r.begin(), r.end(), [](const BigInt& x) { return x != 0; })) next.push_back(std::move(r));
    }
    work = std::move(next);
    if (!have) continue;
    if (pivot[c] < 0)
      for (auto& x : pivot) x = -x;
    out.push_back(std::move(pivot));
    pivots.push_back(c);
  }
  IntMatrix w(out.size(), n);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = out[i][j];
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::size_t c = pivots[k];
    for (std::size_t i = 0; i < k; ++i) {
      BigInt q = floor_div(w(i, c), w(k, c));
      if (q == 0) continue;
      for (std::size_t j = c; j < n; ++j) w(i, j) -= q * w(k, j);
    }
  }
  return w;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 to_residue(const BigInt& x, u64 m) { return mpz_fdiv_ui(x.get_mpz_t(), m); }

const std::vector<u64>& large_primes(std::size_t count) {
  static std::vector<u64> primes;
  if (primes.size() < count) {
    BigInt c = primes.empty() ? (BigInt(1) << 62) : BigInt(static_cast<unsigned long>(primes.back()));
    while (primes.size() < count) {
      c -= 1;
      while (!is_prime(c)) c -= 1;
      primes.push_back(c.get_ui());
    }
  }
  return primes;
}

u64 det_mod(const IntMatrix& a, u64 m) {
  const std::size_t n = a.rows();
  std::vector<u64> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = to_residue(a(i, j), m);
  u64 det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && t[piv * n + c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(t[piv * n + j], t[c * n + j]);
      det = det == 0 ? 0 : m - det;
    }
    u64 pv = t[c * n + c];
    det = mulmod(det, pv, m);
    u64 inv = powmod(pv, m - 2, m);
    for (std::size_t i = c + 1; i < n; ++i) {
      u64 f = mulmod(t[i * n + c], inv, m);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) t[i * n + j] = (t[i * n + j] + m - mulmod(f, t[c * n + j], m)) % m;
    }
  }
  return det;
}

}  // namespace

BigInt determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw PreconditionError("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  double log2_bound = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * a(i, j);
    if (s == 0) return 0;
    long e = 0;
    double d = mpz_get_d_2exp(&e, s.get_mpz_t());
    log2_bound += 0.5 * (std::log2(d) + static_cast<double>(e));
  }
  std::size_t count = static_cast<std::size_t>(log2_bound / 61.0) + 2;
  const auto& primes = large_primes(count);
  BigInt x = 0, m = 1;
  for (std::size_t k = 0; k < count; ++k) {
    u64 q = primes[k];
    u64 r = det_mod(a, q);
    BigInt bq(static_cast<unsigned long>(q));
    BigInt t = mod((BigInt(static_cast<unsigned long>(r)) - x) * inv_mod(m, bq), bq);
    x += m * t;
    m *= bq;
  }
  if (x > m / 2) x -= m;
  return x;
}

std::vector<std::size_t> independent_rows(const std::vector<IntRow>& rows, std::size_t n,
                                          const std::vector<std::size_t>& order) {
  const u64 m = large_primes(1)[0];
  std::vector<std::vector<u64>> basis;  // echelon rows, pivot col in piv_col
  std::vector<std::size_t> piv_col;
  std::vector<std::size_t> chosen;
  for (std::size_t idx : order) {
    if (chosen.size() == n) break;
    std::vector<u64> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = to_residue(rows[idx][j], m);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      u64 f = v[piv_col[b]];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + m - mulmod(f, basis[b][j], m)) % m;
    }
    std::size_t pc = 0;
    while (pc < n && v[pc] == 0) ++pc;
    if (pc == n) continue;
    u64 inv = powmod(v[pc], m - 2, m);
    for (auto& x : v) x = mulmod(x, inv, m);
    for (auto& b : basis) {
      u64 f = b[pc];
      if (f == 0) continue;
      for (std::size_t j = 0; j < n; ++j) b[j] = (b[j] + m - mulmod(f, v[j], m)) % m;
    }
    basis.push_back(std::move(v));
    piv_col.push_back(pc);
    chosen.push_back(idx);
  }
  return chosen;
}

SmithForm smith(const IntMatrix& in) {
  if (in.rows() != in.cols()) throw PreconditionError("smith: matrix not square");
  const std::size_t n = in.rows();
  IntMatrix a = in;
  SmithForm out{{}, IntMatrix::identity(n), IntMatrix::identity(n)};
  IntMatrix& V = out.V;
  IntMatrix& Vi = out.V_inv;

  // column j += t * column k, tracked.
  auto col_addmul = [&](std::size_t j, std::size_t k, const BigInt& t) {
    if (t == 0) return;
    for (std::size_t i = 0; i < n; ++i) a(i, j) += t * a(i, k);
    for (std::size_t i = 0; i < n; ++i) V(i, j) += t * V(i, k);
    for (std::size_t i = 0; i < n; ++i) Vi(k, i) -= t * Vi(j, i);
  };
  auto col_swap = [&](std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, j), a(i, k));
    for (std::size_t i = 0; i < n; ++i) std::swap(V(i, j), V(i, k));
    for (std::size_t i = 0; i < n; ++i) std::swap(Vi(j, i), Vi(k, i));
  };
  auto row_addmul = [&](std::size_t i, std::size_t k, const BigInt& t) {
    if (t == 0) return;
    for (std::size_t j = 0; j < n; ++j) a(i, j) += t * a(k, j);
  };
  auto row_swap = [&](std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(i, j), a(k, j));
  };

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (bi == n || abs(a(i, j)) < abs(a(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == n) throw PreconditionError("smith: matrix is singular");
      row_swap(t, bi);
      col_swap(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a(i, t) == 0) continue;
        row_addmul(i, t, -floor_div(a(i, t), a(t, t)));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        col_addmul(j, t, -floor_div(a(t, j), a(t, t)));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_addmul(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.diagonal.push_back(abs(a(t, t)));
  }
  return out;
}

}  // namespace qck::arith
