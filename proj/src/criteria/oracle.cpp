#include "qck/criteria.hpp"

namespace qck::criteria {

ParityVerdict class_order_parity_oracle(const Ideal& a, std::optional<BigInt> class_number) {
  ParityVerdict v;
  v.ideal_norm = a.norm();
  if (v.ideal_norm % 2 == 0)
    throw PreconditionError("class_order_parity_oracle: ideal norm " + v.ideal_norm.get_str() + " is even");
  v.residue_mod_8 = static_cast<int>(arith::mod(v.ideal_norm, BigInt(8)).get_si());
  v.order_odd = v.residue_mod_8 == 1 || v.residue_mod_8 == 7;
  if (class_number && *class_number == 2) v.principal = v.order_odd;
  return v;
}

WitnessPrime construct_witness_prime(std::int64_t p) {
  quad::validate_field_prime(p);
  const BigInt P(static_cast<long>(p));
  WitnessPrime w;
  for (BigInt q = 3;; q += 8) {
    if (arith::jacobi_symbol(q, P) == -1 && arith::is_prime(q)) {
      w.q = q;
      break;
    }
  }
  w.nonresidue = arith::mod(w.q, P);
  w.modulus = 8 * P;
  const arith::Residue rs[] = {{3, 8}, {w.nonresidue, P}};
  w.residue_class = arith::crt_combine(rs);
  if (arith::mod(w.q, w.modulus) != w.residue_class)
    throw InternalError("construct_witness_prime: CRT class disagrees with q");
  return w;
}

HilbertReport hilbert_class_field_check(std::int64_t p, const BigInt& class_number) {
  const auto field = quart::Field::get(p);
  HilbertReport r;
  r.precondition = class_number == 2;

  const QuadInt U = field->U_F();
  const auto& l2 = field->L2();
  QuadInt lhs = l2.L2 * l2.L2, rhs = QuadInt::rational(2, p);
  if (l2.e >= 0) lhs = lhs * quad::pow(U, static_cast<unsigned>(l2.e));
  else rhs = rhs * quad::pow(U, static_cast<unsigned>(-l2.e));
  r.two_is_L2_squared_UF = lhs == rhs;

  const QuartInt u = QuartInt::from_quad(U);
  r.uf_unit_case = classify_ramification_at_2(u).condition == Condition::unit_case;
  r.uf_ideal_trivial = Ideal::principal(u).is_unit();
  r.two_not_square = !quart::sqrt_in_OK(QuartInt::rational(2, p));

  if (!r.precondition)
    r.verdict = "precondition unmet: h_K = " + class_number.get_str() + ", not 2";
  else if (r.verified())
    r.verdict = "H_K = K(sqrt(2)) = Q(" + std::to_string(p) + "^(1/4), sqrt(2))";
  else
    r.verdict = "check failed";
  return r;
}

}  // namespace qck::criteria
