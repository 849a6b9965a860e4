#include "qck/quartfield.hpp"

namespace qck::quart {

using quad::sqrt_in_OF;

std::string to_string(Membership m) {
  switch (m) {
    case Membership::in_OF:
      return "in_OF";
    case Membership::in_OK_minus_OF:
      return "in_OK_minus_OF";
    case Membership::not_integral:
      return "not_integral";
  }
  return "?";
}

namespace {

// x / sqrt(p) when it lies in O_F
std::optional<QuadInt> div_sqrt_p(const QuadInt& x) {
  if (x.a % x.p != 0) return std::nullopt;
  return QuadInt{x.b, x.a / x.p, x.p};
}

QuartInt positive(QuartInt y) { return sign(y) < 0 ? -y : y; }

// y = c + d r with y^2 = x, given B = +-norm_KF(y) candidates.
std::optional<QuartInt> sqrt_from_norm_root(const QuartInt& x, const QuadInt& B) {
  const QuadInt A = trace_KF(x);  // 2 A1
  const QuadInt A2 = x.A2();
  for (const QuadInt& b : {B, -B}) {
    auto C = sqrt_in_OF(A + b * BigInt(2));
    if (!C || C->is_zero()) continue;
    if (C->a % 2 != 0 || C->b % 2 != 0) continue;
    QuadInt c{C->a / 2, C->b / 2, x.p};
    // A2 = 2 c d
    auto d = quad::exact_div(A2, c * BigInt(2));
    if (!d) continue;
    QuartInt y{c.a, d->a, c.b, d->b, x.p};
    if (y * y == x) return positive(y);
  }
  return std::nullopt;
}

}  // namespace

Membership membership_by_discriminant(const QuadInt& A1, const QuadInt& A0) {
  if (A1.p != A0.p) throw ContextMismatch("membership_by_discriminant: mixed fields");
  QuadInt disc = A1 * A1 - A0 * BigInt(4);
  if (sqrt_in_OF(disc)) return Membership::in_OF;
  if (auto q = div_sqrt_p(disc); q && sqrt_in_OF(*q)) return Membership::in_OK_minus_OF;
  return Membership::not_integral;
}

std::optional<QuartInt> has_integral_sqrt(const QuartInt& x) {
  if (x.in_OF()) throw PreconditionError("has_integral_sqrt: " + to_string(x) + " lies in O_F");
  if (sign(x) <= 0) throw PreconditionError("has_integral_sqrt: " + to_string(x) + " is not positive");
  auto B = sqrt_in_OF(norm_KF(x));
  if (!B)
    throw PreconditionError("has_integral_sqrt: norm_KF(" + to_string(x) + ") = " + quad::to_string(norm_KF(x)) +
                            " is not a square in O_F");
  return sqrt_from_norm_root(x, *B);
}

std::optional<QuartInt> sqrt_in_OK(const QuartInt& x) {
  if (x.is_zero()) return x;
  if (x.in_OF()) {
    QuadInt a = x.A1();
    if (auto c = sqrt_in_OF(a)) return positive(QuartInt::from_quad(*c));
    if (auto q = div_sqrt_p(a))
      if (auto d = sqrt_in_OF(*q)) return positive(QuartInt{0, d->a, 0, d->b, x.p});
    return std::nullopt;
  }
  if (sign(x) < 0) return std::nullopt;
  auto B = sqrt_in_OF(norm_KF(x));
  if (!B) return std::nullopt;
  return sqrt_from_norm_root(x, *B);
}

}  // namespace qck::quart
