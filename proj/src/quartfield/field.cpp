#include <map>

#include "qck/quartfield.hpp"

namespace qck::quart {

namespace {

// Z[r] is the full ring of integers: the trace-form discriminant is -256 p^3,
// Dedekind's criterion holds at 2, and x^4 - p is Eisenstein at p.  Odd primes
// other than p do not divide the discriminant.
void check_monogenic(std::int64_t p) {
  arith::IntMatrix t(4, 4);
  std::array<QuartInt, 4> pw;
  for (int i = 0; i < 4; ++i) pw[i] = pow(QuartInt::root(p), static_cast<unsigned>(i));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t(i, j) = 4 * (pw[i] * pw[j]).c[0];
  const BigInt P(static_cast<long>(p));
  if (arith::determinant(t) != -256 * P * P * P)
    throw InternalError("field discriminant is not -256 p^3 for p = " + std::to_string(p));
  // x^4 - p = (x+1)^4 + 2 g(x); need g(1) odd
  BigInt g1 = -(P + 1) / 2 - 7;
  if (arith::mod(g1, BigInt(2)) != 1) throw InternalError("Z[r] is not 2-maximal for p = " + std::to_string(p));
}

}  // namespace

Field::Field(std::int64_t p) : p_(p) {
  quad::validate_field_prime(p);
  check_monogenic(p);
  uf_ = quad::fundamental_unit(p);
  l2_ = quad::compute_L2(p);
}

std::shared_ptr<const Field> Field::get(std::int64_t p) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const Field>> registry;
  std::lock_guard lock(mu);
  auto it = registry.find(p);
  if (it != registry.end()) return it->second;
  auto f = std::make_shared<const Field>(p);
  registry.emplace(p, f);
  return f;
}

BigInt Field::discriminant() const {
  const BigInt P(static_cast<long>(p_));
  return -256 * P * P * P;
}

BigInt Field::minkowski_bound() const { return quart::minkowski_bound(p_); }

UnitBasis Field::units(const Deadline& deadline) const {
  {
    std::lock_guard lock(mu_);
    if (units_) return *units_;
  }
  UnitBasis b = unit_group_basis(p_, deadline);
  if (b.certified) {
    std::lock_guard lock(mu_);
    units_ = b;
  }
  return b;
}

BigInt minkowski_bound(std::int64_t p) {
  constexpr mpfr_prec_t prec = 256;
  Real P(static_cast<long>(p), prec);
  Real v = Real(6L, prec) / arith::pi(prec) * P * sqrt(P);
  BigInt c = v.ceil();
  if (abs(v - Real(c, prec)) < 1e-40 || abs(v - Real(BigInt(c - 1), prec)) < 1e-40)
    throw InternalError("minkowski_bound: cannot decide ceiling");
  return c;
}

}  // namespace qck::quart
