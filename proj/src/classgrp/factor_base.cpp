#include <algorithm>
#include <map>

#include "qck/classgrp.hpp"

namespace qck::classgrp {

FactorBase build_factor_base(std::int64_t p, const BigInt& bound) {
  FactorBase fb;
  fb.p = p;
  fb.bound = bound;
  if (bound >= 2)
    for (std::int64_t q : arith::primes_up_to(bound.get_si()))
      for (auto& P : ideals::dedekind_factor_rational_prime(q, p)) {
        P.exponent = 1;
        (P.norm() <= bound ? fb.primes : fb.outside).push_back(std::move(P));
      }
  auto by_norm = [](const PrimeIdealFactor& a, const PrimeIdealFactor& b) {
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    return a.ideal < b.ideal;
  };
  std::sort(fb.primes.begin(), fb.primes.end(), by_norm);
  for (const auto* v : {&fb.primes, &fb.outside})
    for (const auto& P : *v) fb.rational_primes.push_back(P.q.get_ui());
  std::sort(fb.rational_primes.begin(), fb.rational_primes.end());
  fb.rational_primes.erase(std::unique(fb.rational_primes.begin(), fb.rational_primes.end()), fb.rational_primes.end());
  return fb;
}

namespace {

// Factors the part n of |N(x)| over the base.
std::optional<std::vector<long>> factor_norm(const FactorBase& fb, const QuartInt& x, BigInt n) {
  std::vector<long> e(fb.size(), 0);
  if (n == 1) return e;
  {
    BigInt m = n;
    for (unsigned long q : fb.rational_primes)
      while (mpz_divisible_ui_p(m.get_mpz_t(), q)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
    if (m != 1) return std::nullopt;
  }

  // rational primes of the base with the base primes and outside primes above them
  std::map<BigInt, std::pair<std::vector<std::size_t>, std::vector<const PrimeIdealFactor*>>> above;
  for (std::size_t i = 0; i < fb.size(); ++i) above[fb.primes[i].q].first.push_back(i);
  for (const auto& P : fb.outside) above[P.q].second.push_back(&P);

  for (auto& [q, ps] : above) {
    long k = 0;
    while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
      n /= q;
      ++k;
    }
    if (k == 0) continue;
    for (const auto* P : ps.second)
      if (P->ideal.contains(x)) return std::nullopt;
    std::vector<std::size_t> hit;
    for (std::size_t i : ps.first)
      if (fb.primes[i].ideal.contains(x)) hit.push_back(i);
    if (hit.empty()) throw InternalError("factor_over: norm divisible by q but no prime above q contains x");
    long total = 0;
    if (hit.size() == 1) {
      e[hit[0]] = k / fb.primes[hit[0]].f;
      total = e[hit[0]] * fb.primes[hit[0]].f;
    } else {
      const Ideal X = Ideal::principal(x);
      for (std::size_t i : hit) {
        e[i] = ideals::valuation(X, fb.primes[i]);
        total += e[i] * fb.primes[i].f;
      }
    }
    if (total != k) throw InternalError("factor_over: valuations do not account for the norm");
    if (n == 1) break;
  }
  if (n != 1) return std::nullopt;
  return e;
}

}  // namespace

std::optional<std::vector<long>> factor_over(const FactorBase& fb, const QuartInt& x) {
  if (x.is_zero()) throw PreconditionError("factor_over: x = 0");
  return factor_norm(fb, x, abs(quart::absolute_norm(x)));
}

std::optional<std::vector<long>> factor_over_cofactor(const FactorBase& fb, const QuartInt& x,
                                                      const PrimeIdealFactor& Q) {
  if (x.is_zero()) throw PreconditionError("factor_over_cofactor: x = 0");
  if (!Q.ideal.contains(x)) return std::nullopt;
  BigInt n = abs(quart::absolute_norm(x));
  if (!mpz_divisible_p(n.get_mpz_t(), Q.norm().get_mpz_t())) throw InternalError("factor_over_cofactor: N(Q) does not divide N(x)");
  n /= Q.norm();
  // the q-part of N(x) is exactly N(Q), so Q is the only prime above q in <x>
  if (mpz_divisible_p(n.get_mpz_t(), Q.q.get_mpz_t())) return std::nullopt;
  return factor_norm(fb, x, n);
}

Reduction reduce(const Ideal& a) {
  const std::int64_t p = a.p();
  if (a.is_unit()) return {a, QuartInt::rational(1, p)};
  auto basis = quart::reduce_lattice_basis(a.basis(), {0, 0, 0});
  std::optional<QuartInt> best;
  BigInt best_norm;
  for (const auto& x : basis) {
    if (x.is_zero()) continue;
    BigInt n = abs(quart::absolute_norm(x));
    if (!best || n < best_norm) {
      best = x;
      best_norm = n;
    }
  }
  auto b = ideals::divide(Ideal::principal(*best), a);
  if (!b) throw InternalError("reduce: element of the ideal not divisible by it");
  return {*b, *best};
}

Ideal reduce_in_class(const Ideal& a) { return reduce(reduce(a).ideal).ideal; }

namespace {

Ideal pow_in_class(const Ideal& a, unsigned long k) {
  Ideal r = Ideal::unit(a.p()), b = a;
  while (k) {
    if (k & 1) r = reduce_in_class(r * b);
    k >>= 1;
    if (k) b = reduce_in_class(b * b);
  }
  return r;
}

}  // namespace

Ideal class_representative(const FactorBase& fb, const std::vector<BigInt>& exponents) {
  if (exponents.size() != fb.size()) throw PreconditionError("class_representative: exponent count mismatch");
  Ideal r = Ideal::unit(fb.p);
  for (std::size_t j = 0; j < fb.size(); ++j) {
    const BigInt& e = exponents[j];
    if (e == 0) continue;
    const BigInt a = abs(e);
    if (!a.fits_ulong_p()) throw ResourceLimit("class_representative: exponent too large");
    Ideal base = e > 0 ? fb.primes[j].ideal : reduce(fb.primes[j].ideal).ideal;
    r = reduce_in_class(r * pow_in_class(base, a.get_ui()));
  }
  return r;
}

std::size_t exhaustive_class_count(const FactorBase& fb, std::size_t max_classes, const Deadline& deadline) {
  const auto units = quart::Field::get(fb.p)->units(deadline);
  std::vector<Ideal> reps = {Ideal::unit(fb.p)};
  std::vector<Ideal> inverses = {Ideal::unit(fb.p)};  // N(R) R^{-1}, same class as R^{-1}
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const auto& P : fb.primes) {
      deadline.check("exhaustive class enumeration");
      Ideal c = reduce_in_class(reps[i] * P.ideal);
      bool known = false;
      for (std::size_t j = 0; j < reps.size() && !known; ++j)
        known = ideals::find_generator(reduce_in_class(c * inverses[j]), units, deadline).has_value();
      if (known) continue;
      if (reps.size() >= max_classes) throw ResourceLimit("exhaustive_class_count: more than " +
                                                          std::to_string(max_classes) + " classes");
      inverses.push_back(reduce_in_class(ideals::scaled_inverse(c)));
      reps.push_back(std::move(c));
    }
  }
  return reps.size();
}

}  // namespace qck::classgrp
