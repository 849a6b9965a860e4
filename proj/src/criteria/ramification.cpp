#include "qck/criteria.hpp"

namespace qck::criteria {

std::string to_string(Condition c) {
  switch (c) {
    case Condition::unit_case:
      return "unit_case";
    case Condition::case2:
      return "case2";
    case Condition::case3:
      return "case3";
    case Condition::case4:
      return "case4";
    case Condition::none:
      return "none";
  }
  return "?";
}

namespace {

BigInt md(const BigInt& x, long m) { return arith::mod(x, BigInt(m)); }
bool odd(const BigInt& x) { return md(x, 2) == 1; }

}  // namespace

RamificationVerdict classify_ramification_at_2(const QuartInt& alpha) {
  if (alpha.is_zero()) throw PreconditionError("classify_ramification_at_2: alpha = 0");
  if (quart::sqrt_in_OK(alpha))
    throw PreconditionError("classify_ramification_at_2: " + quart::to_string(alpha) +
                            " is a square in K, so K(sqrt(alpha)) = K");
  return evaluate_conditions(alpha);
}

RamificationVerdict evaluate_conditions(const QuartInt& alpha) {
  if (alpha.is_zero()) throw PreconditionError("evaluate_conditions: alpha = 0");
  const std::int64_t p = alpha.p;
  RamificationVerdict v;
  v.alpha = alpha;
  v.norm = quart::absolute_norm(alpha);

  // alpha = U_F eps^2 exactly when alpha U_F is a square (of a unit)
  if (abs(v.norm) == 1 && quart::sqrt_in_OK(alpha * QuartInt::from_quad(quart::Field::get(p)->U_F()))) {
    v.condition = Condition::unit_case;
    v.evidence.push_back({"N(alpha)", v.norm, 0});
    return v;
  }

  const auto& a0 = alpha.c;
  if (md(a0[2], 2) == 1 && md(a0[0], 2) == 0 && md(a0[1], 2) == 0 && md(a0[3], 2) == 0) {
    v.alpha = alpha * QuartInt{0, 0, 1, 0, p};
    v.preprocessed = true;
    v.norm = quart::absolute_norm(v.alpha);
  }
  const BigInt &a1 = v.alpha.c[0], &a2 = v.alpha.c[1], &a3 = v.alpha.c[2], &a4 = v.alpha.c[3];
  BigInt n8 = md(v.norm, 8);
  v.evidence = {{"N(alpha)", n8, 8}, {"a1", md(a1, 8), 8}, {"a2", md(a2, 4), 4},
                {"a3", md(a3, 8), 8}, {"a4", md(a4, 4), 4}, {"a1+a3", md(a1 + a3, 8), 8}};

  bool a13_odd = odd(a1) && odd(a3);
  if (n8 == 4 && a13_odd && md(a1 - a3, 8) == 0 && md(a2, 4) == 2 && md(a4, 4) == 0) {
    v.condition = Condition::case2;
  } else if (n8 == 4 && a13_odd && md(a1 - a3, 4) != 0 && md(a1 + a3, 8) == 0 && md(a2, 4) == 0 &&
             md(a4, 4) == 2) {
    v.condition = Condition::case3;
  } else if (odd(v.norm) && abs(v.norm) != 1 && odd(a1) && md(a2, 2) == 0 && md(a2 - a4, 4) == 0 &&
             md(a3, 4) == 0) {
    v.condition = Condition::case4;
    v.paper_literal = true;
  }
  return v;
}

NormalizedAlpha normalize_to_square_norm(const QuartInt& alpha) {
  if (alpha.is_zero()) throw PreconditionError("normalize_to_square_norm: alpha = 0");
  const std::int64_t p = alpha.p;
  NormalizedAlpha out;
  QuartInt a = alpha;
  quart::UnitBasis units;
  bool have_units = false;
  auto get_units = [&]() -> const quart::UnitBasis& {
    if (!have_units) {
      units = quart::Field::get(p)->units();
      have_units = true;
    }
    return units;
  };
  if (a.in_OF()) {
    a = a * get_units().mu1 * get_units().mu1;
    out.premultiplied = true;
  }
  if (auto B = quad::sqrt_in_OF(quart::norm_KF(a))) {
    out.beta = a;
    out.B = *B;
    return out;
  }
  QuartInt b = a * quart::unit_inverse(get_units().mu2);
  if (auto B = quad::sqrt_in_OF(quart::norm_KF(b))) {
    out.beta = b;
    out.B = *B;
    out.divided_by_mu2 = true;
    return out;
  }
  throw InternalError("normalize_to_square_norm: neither alpha nor alpha/mu2 has a square relative norm (alpha = " +
                      quart::to_string(alpha) + ")");
}

}  // namespace qck::criteria
