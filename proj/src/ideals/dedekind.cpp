#include "qck/ideals.hpp"

namespace qck::ideals {

namespace {

QuartInt lift(const std::vector<BigInt>& poly, std::int64_t p) {
  QuartInt x{0, 0, 0, 0, p};
  const QuartInt r = QuartInt::root(p);
  QuartInt rk = QuartInt::rational(1, p);
  for (const auto& c : poly) {
    x = x + rk * c;
    rk = rk * r;
  }
  return x;
}

}  // namespace

std::vector<PrimeIdealFactor> dedekind_factor_rational_prime(const BigInt& q, std::int64_t p) {
  if (q < 2 || !arith::is_prime(q)) throw PreconditionError("dedekind_factor_rational_prime: " + q.get_str() + " is not prime");
  std::vector<PrimeIdealFactor> out;
  auto add = [&](std::vector<BigInt> poly, int e) {
    int f = static_cast<int>(poly.size()) - 1;
    Ideal P = Ideal::from_generators({QuartInt::rational(q, p), lift(poly, p)});
    out.push_back({P, q, f, e, e, std::move(poly)});
  };
  if (q == 2) {
    add({1, 1}, 4);  // x^4 - p = (x+1)^4 mod 2
  } else if (q == p) {
    add({0, 1}, 4);
  } else {
    auto fac = arith::factor_quartic_mod_q(BigInt(static_cast<long>(p)), q);
    for (const auto& f : fac.factors) add(f.poly.coeffs, static_cast<int>(f.multiplicity));
  }
  Ideal prod = Ideal::unit(p);
  int ef = 0;
  for (const auto& P : out) {
    if (P.ideal.norm() != arith::pow(q, P.f)) throw InternalError("dedekind: prime ideal of unexpected norm");
    prod = prod * pow(P.ideal, P.e);
    ef += P.e * P.f;
  }
  if (ef != 4 || !(prod == Ideal::principal(QuartInt::rational(q, p))))
    throw InternalError("dedekind: factors of <" + q.get_str() + "> do not multiply back");
  return out;
}

int valuation(const Ideal& a, const PrimeIdealFactor& P) {
  if (P.ideal.p() != a.p()) throw ContextMismatch("valuation: ideal and prime from different fields");
  if (P.f < 1 || P.ideal.norm() != arith::pow(P.q, P.f) || !arith::is_prime(P.q))
    throw PreconditionError("valuation: " + to_string(P.ideal) + " is not a prime ideal");
  int k = 0;
  Ideal cur = a;
  const Ideal inv = scaled_inverse(P.ideal);
  while (cur.norm() % P.ideal.norm() == 0) {
    auto next = divide(cur * inv, P.ideal.norm());
    if (!next) break;
    cur = *next;
    ++k;
  }
  return k;
}

std::vector<PrimeIdealFactor> factor(const Ideal& a) {
  std::vector<PrimeIdealFactor> out;
  Ideal rest = a;
  for (const auto& [q, mult] : arith::factor_integer(a.norm())) {
    for (auto P : dedekind_factor_rational_prime(q, a.p())) {
      int v = valuation(rest, P);
      if (v == 0) continue;
      rest = *divide(rest, pow(P.ideal, static_cast<unsigned>(v)));
      P.exponent = v;
      out.push_back(std::move(P));
    }
  }
  if (!rest.is_unit()) throw InternalError("factor: cofactor " + to_string(rest) + " left over");
  return out;
}

}  // namespace qck::ideals
