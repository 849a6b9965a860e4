#include <algorithm>
#include <sstream>

#include "qck/error.hpp"
#include "qck/intmat.hpp"
#include "qck/quadfield.hpp"

namespace qck::quad {

QuadIdeal QuadIdeal::from_generators(const std::vector<QuadInt>& gens) {
  if (gens.empty()) throw PreconditionError("QuadIdeal: no generators");
  const std::int64_t p = gens.front().p;
  std::vector<arith::IntRow> rows;
  for (const auto& g : gens) {
    if (g.p != p) throw ContextMismatch("QuadIdeal: generators from different fields");
    // g and g*sqrt(p), coordinates reversed so that the row HNF puts the
    // sqrt(p) coordinate first
    rows.push_back({g.b, g.a});
    rows.push_back({g.a, g.b * p});
  }
  arith::IntMatrix h = arith::hnf(rows, 2);
  if (h.rows() != 2) throw PreconditionError("QuadIdeal: generators span the zero ideal");
  QuadIdeal I{h(1, 1), h(0, 1), h(0, 0), p};
  return I;
}

std::vector<QuadInt> QuadIdeal::basis() const { return {QuadInt{a, 0, p}, QuadInt{b, c, p}}; }

bool QuadIdeal::contains(const QuadInt& x) const {
  if (x.p != p) throw ContextMismatch("QuadIdeal::contains: element from another field");
  if (x.b % c != 0) return false;
  BigInt v = x.b / c;
  return (x.a - v * b) % a == 0;
}

bool QuadIdeal::contains(const QuadIdeal& o) const {
  for (const auto& x : o.basis())
    if (!contains(x)) return false;
  return true;
}

QuadIdeal operator*(const QuadIdeal& x, const QuadIdeal& y) {
  if (x.p != y.p) throw ContextMismatch("QuadIdeal product across fields");
  std::vector<QuadInt> g;
  for (const auto& u : x.basis())
    for (const auto& v : y.basis()) g.push_back(u * v);
  return QuadIdeal::from_generators(g);
}

QuadIdeal operator+(const QuadIdeal& x, const QuadIdeal& y) {
  if (x.p != y.p) throw ContextMismatch("QuadIdeal sum across fields");
  auto g = x.basis();
  for (const auto& v : y.basis()) g.push_back(v);
  return QuadIdeal::from_generators(g);
}

QuadIdeal pow(const QuadIdeal& x, unsigned n) {
  QuadIdeal r = QuadIdeal::unit(x.p), b = x;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

std::string to_string(const QuadIdeal& x) {
  std::ostringstream os;
  os << "Z*" << x.a << " + Z*(" << to_string(QuadInt{x.b, x.c, x.p}) << ")";
  return os.str();
}

std::vector<FPrime> f_primes_above(const BigInt& ell, std::int64_t p) {
  if (!arith::is_prime(ell)) throw PreconditionError("f_primes_above: " + ell.get_str() + " is not prime");
  const BigInt P(static_cast<long>(p));
  auto ideal = [&](std::vector<QuadInt> g) { return QuadIdeal::from_generators(g); };
  if (ell == 2) return {{ideal({{2, 0, p}, {1, 1, p}}), ell, FSplit::ramified}};
  if (ell == P) return {{ideal({{0, 1, p}}), ell, FSplit::ramified}};
  if (arith::jacobi_symbol(P, ell) == 1) {
    BigInt s = arith::sqrt_mod(P, ell);
    BigInt t = ell - s;
    if (t < s) std::swap(s, t);
    return {{ideal({{ell, 0, p}, {-s, 1, p}}), ell, FSplit::split},
            {ideal({{ell, 0, p}, {-t, 1, p}}), ell, FSplit::split}};
  }
  return {{ideal({{ell, 0, p}}), ell, FSplit::inert}};
}

unsigned valuation(const QuadIdeal& A, const FPrime& P) {
  if (A.p != P.ideal.p) throw ContextMismatch("valuation across fields");
  if (A.norm() == 0) throw PreconditionError("valuation of the zero ideal");
  unsigned k = 0;
  QuadIdeal Q = P.ideal;
  while (Q.contains(A)) {
    ++k;
    Q = Q * P.ideal;
  }
  return k;
}

std::vector<FFactor> factor(const QuadIdeal& A) {
  std::vector<FFactor> out;
  if (A.is_unit()) return out;
  QuadIdeal check = QuadIdeal::unit(A.p);
  for (const auto& [ell, e] : arith::factor_integer(A.norm())) {
    for (const auto& P : f_primes_above(ell, A.p)) {
      unsigned v = valuation(A, P);
      if (v == 0) continue;
      out.push_back({P, v});
      check = check * pow(P.ideal, v);
    }
  }
  if (!(check == A)) throw InternalError("factor: product of prime powers differs from " + to_string(A));
  return out;
}

}  // namespace qck::quad
