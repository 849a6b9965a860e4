#include <algorithm>
#include <sstream>

#include "qck/arith.hpp"
#include "qck/error.hpp"

namespace qck::arith {

ModPoly modpoly_mul(const ModPoly& a, const ModPoly& b, const BigInt& q) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  ModPoly r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  for (auto& c : r.coeffs) c = mod(c, q);
  while (r.coeffs.size() > 1 && r.coeffs.back() == 0) r.coeffs.pop_back();
  return r;
}

BigInt modpoly_eval(const ModPoly& f, const BigInt& x, const BigInt& q) {
  BigInt acc = 0;
  for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) acc = mod(acc * x + *it, q);
  return acc;
}

std::string to_string(const ModPoly& f, char var) {
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const BigInt& c = f.coeffs[i];
    if (c == 0 && !(i == 0 && first)) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << '*';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

namespace {

ModPoly linear(const BigInt& root, const BigInt& q) { return ModPoly{{mod(-root, q), 1}}; }

// x^2 + b x + c
ModPoly quadratic(const BigInt& b, const BigInt& c, const BigInt& q) {
  return ModPoly{{mod(c, q), mod(b, q), 1}};
}

// Factors of x^2 - a over Z/q: two roots, or the irreducible quadratic.
void split_x2_minus(const BigInt& a, const BigInt& q, std::vector<ModPolyFactor>& out) {
  if (jacobi_symbol(a, q) == 1) {
    BigInt c = sqrt_mod(a, q);
    out.push_back({linear(c, q), 1});
    out.push_back({linear(q - c, q), 1});
  } else {
    out.push_back({quadratic(0, -a, q), 1});
  }
}

}  // namespace

ModPolyFactorization factor_quartic_mod_q(const BigInt& p, const BigInt& q) {
  if (!is_prime(q)) throw PreconditionError("factor_quartic_mod_q: q = " + q.get_str() + " is not prime");
  if (q == 2 || mod(p, q) == 0)
    throw PreconditionError("factor_quartic_mod_q: q must not divide 2p (q = " + q.get_str() + ")");

  ModPolyFactorization out{q, {}};
  const BigInt pq = mod(p, q);
  if (jacobi_symbol(pq, q) == 1) {
    // x^4 - p = (x^2 - s)(x^2 + s) with s^2 = p.
    BigInt s = sqrt_mod(pq, q);
    split_x2_minus(s, q, out.factors);
    split_x2_minus(q - s, q, out.factors);
  } else if (mod(q, 4) == 3) {
    // No square root of p, but -p is a square: x^4 - p = (x^2 + a x + b)(x^2 - a x + b)
    // with b^2 = -p and a^2 = 2b.
    BigInt b = sqrt_mod(mod(-pq, q), q);
    if (jacobi_symbol(2 * b, q) != 1) b = q - b;
    BigInt a = sqrt_mod(2 * b, q);
    out.factors.push_back({quadratic(a, b, q), 1});
    out.factors.push_back({quadratic(q - a, b, q), 1});
  } else {
    out.factors.push_back({ModPoly{{mod(-pq, q), 0, 0, 0, 1}}, 1});
  }

  std::sort(out.factors.begin(), out.factors.end(), [](const ModPolyFactor& x, const ModPolyFactor& y) {
    if (x.poly.degree() != y.poly.degree()) return x.poly.degree() < y.poly.degree();
    return std::lexicographical_compare(x.poly.coeffs.begin(), x.poly.coeffs.end(), y.poly.coeffs.begin(),
                                        y.poly.coeffs.end());
  });
  return out;
}

}  // namespace qck::arith
