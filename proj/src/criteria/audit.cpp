#include <sstream>

#include "qck/criteria.hpp"

namespace qck::criteria {

using quad::QuadIdeal;

bool AuditReport::passed() const {
  if (!hypotheses_hold) return false;
  for (const auto& it : items)
    if (!it.passed) return false;
  return !items.empty();
}

namespace {

BigInt md(const BigInt& x, long m) { return arith::mod(x, BigInt(m)); }

QuadIdeal principal_F(const QuadInt& x) { return QuadIdeal::from_generators({x}); }

// Extension of an ideal of O_F to O_K.
Ideal extend(const QuadIdeal& a) {
  std::vector<QuartInt> gens;
  for (const auto& b : a.basis()) gens.push_back(QuartInt::from_quad(b));
  return Ideal::from_generators(gens);
}

std::string exps(const std::vector<quad::FFactor>& f) {
  std::ostringstream os;
  for (std::size_t i = 0; i < f.size(); ++i)
    os << (i ? " " : "") << quad::to_string(f[i].prime.ideal) << "^" << f[i].exponent;
  return os.str();
}

}  // namespace

OddValuationReport audit_odd_valuation_ramification(const QuartInt& alpha) {
  if (alpha.is_zero()) throw PreconditionError("audit_odd_valuation_ramification: alpha = 0");
  OddValuationReport rep;
  const Ideal four_alpha = Ideal::principal(alpha * BigInt(4));
  for (const auto& P : ideals::factor(Ideal::principal(alpha))) {
    if (P.exponent % 2 == 0) continue;
    OddValuationPrime o{P, P.exponent, ideals::valuation(four_alpha, P), false};
    // an odd exponent in disc(Z_K[sqrt(alpha)]) = d(L/K) * index^2 survives in d(L/K)
    o.ramified = o.disc_valuation % 2 != 0;
    rep.primes.push_back(std::move(o));
  }
  rep.alpha_ideal_square = rep.primes.empty();
  return rep;
}

AuditReport audit_square_ideal_generator(const QuartInt& alpha, const QuadInt& B, const Deadline& deadline) {
  const std::int64_t p = alpha.p;
  if (B.p != p) throw ContextMismatch("audit: B from another field");
  AuditReport rep;

  // hypotheses
  if (alpha.is_zero()) {
    rep.hypothesis_failures.push_back("alpha = 0");
    return rep;
  }
  if (alpha.in_OF()) rep.hypothesis_failures.push_back("alpha lies in O_F");
  if (!(quart::norm_KF(alpha) == B * B)) rep.hypothesis_failures.push_back("norm_KF(alpha) != B^2");
  auto fac = ideals::factor(Ideal::principal(alpha));
  Ideal I = Ideal::unit(p);
  bool square = true;
  for (const auto& P : fac) {
    if (P.exponent % 2 != 0) square = false;
    else I = I * pow(P.ideal, static_cast<unsigned>(P.exponent / 2));
  }
  if (!square) rep.hypothesis_failures.push_back("<alpha> is not the square of an ideal");
  else rep.I = I;
  auto v = evaluate_conditions(alpha);
  rep.condition = v.condition;
  if (v.preprocessed || (v.condition != Condition::case2 && v.condition != Condition::case3 &&
                         v.condition != Condition::case4))
    rep.hypothesis_failures.push_back("alpha satisfies none of cases 2, 3, 4 (got " + to_string(v.condition) +
                                      (v.preprocessed ? " after multiplying by sqrt(p)" : "") + ")");
  rep.hypotheses_hold = rep.hypothesis_failures.empty();
  if (!rep.hypotheses_hold) return rep;

  const auto field = quart::Field::get(p);
  const QuadInt L2 = field->L2().L2;
  const QuadInt A1{alpha.c[0], alpha.c[2], p};
  const bool c4 = v.condition == Condition::case4;

  // 1
  {
    std::ostringstream d;
    d << "b1 = " << B.a << ", b2 = " << B.b << " (mod 4: " << md(B.a, 4) << ", " << md(B.b, 4) << ")";
    bool ok = c4 ? (md(B.a, 2) == 1 && md(B.b, 4) == 0) : (md(B.a, 2) == md(B.b, 2));
    rep.items.push_back({"1", ok, d.str()});
  }

  const QuadIdeal G = principal_F(A1 + B) + principal_F(A1 - B);
  const QuadIdeal H = principal_F(A1) + principal_F(B);
  const auto Gf = quad::factor(G);
  const auto twoF = quad::f_primes_above(2, p).at(0);

  // 2
  {
    unsigned e = quad::valuation(G, twoF);
    rep.items.push_back({"2", e == 2, "valuation of <L2> in <A1+B>+<A1-B> is " + std::to_string(e)});
  }

  // 3
  {
    QuadIdeal lhs = (c4 ? principal_F(QuadInt::rational(2, p)) : principal_F(L2)) * H;
    rep.items.push_back({"3", G == lhs,
                         "<A1+B>+<A1-B> = " + quad::to_string(G) + ", expected " + quad::to_string(lhs)});
  }

  // 4 and 5: unramified primes of F dividing <A1>+<B>
  {
    bool ok4 = true, ok5 = true;
    std::ostringstream d4, d5;
    for (const auto& f : quad::factor(H)) {
      deadline.check("audit items 4-5");
      if (f.prime.type == quad::FSplit::ramified) continue;
      auto above = ideals::factor(extend(f.prime.ideal));
      bool inert = above.size() == 1 && above[0].exponent == 1;
      bool even = f.exponent % 2 == 0;
      auto& d = inert ? d4 : d5;
      d << quad::to_string(f.prime.ideal) << "^" << f.exponent << " ";
      (inert ? ok4 : ok5) &= even;
    }
    rep.items.push_back({"4", ok4, "inert primes: " + d4.str()});
    rep.items.push_back({"5", ok5, "split primes: " + d5.str()});
  }

  // 6
  {
    bool ok = true;
    for (const auto& f : Gf) {
      if (f.prime.ell == 2) ok &= f.exponent == 2;
      else if (f.prime.ell != p) ok &= f.exponent % 2 == 0;
    }
    rep.items.push_back({"6", ok, exps(Gf)});
  }

  // 4 A1^2 - 4 B^2 = C^2 sqrt(p)
  {
    QuadInt lhs = (A1 * A1 - B * B) * BigInt(4);
    auto q = quad::exact_div(lhs, QuadInt{0, 1, p});
    std::optional<QuadInt> C;
    if (q) C = quad::sqrt_in_OF(*q);
    rep.items.push_back({"C^2 sqrt(p)", C.has_value(),
                         C ? "C = " + quad::to_string(*C) : "(4A1^2 - 4B^2)/sqrt(p) is not a square in O_F"});
  }

  // 7
  {
    auto g = ideals::find_generator(I, deadline);
    rep.items.push_back({"7", g.has_value(), g ? "generator " + quart::to_string(*g) : "I is not principal"});
  }
  return rep;
}

}  // namespace qck::criteria
