#include <sstream>

#include "qck/quartfield.hpp"

namespace qck::quart {

namespace {

void same_field(const QuartInt& x, const QuartInt& y) {
  if (x.p != y.p)
    throw ContextMismatch("QuartInt from fields p=" + std::to_string(x.p) + " and p=" + std::to_string(y.p));
}

}  // namespace

QuartInt operator+(const QuartInt& x, const QuartInt& y) {
  same_field(x, y);
  return {x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3], x.p};
}

QuartInt operator-(const QuartInt& x, const QuartInt& y) {
  same_field(x, y);
  return {x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3], x.p};
}

QuartInt operator*(const QuartInt& x, const QuartInt& y) {
  same_field(x, y);
  std::array<BigInt, 7> t;
  for (int i = 0; i < 4; ++i) {
    if (x.c[i] == 0) continue;
    for (int j = 0; j < 4; ++j) t[i + j] += x.c[i] * y.c[j];
  }
  const long p = x.p;
  return {t[0] + p * t[4], t[1] + p * t[5], t[2] + p * t[6], t[3], x.p};
}

QuartInt mul(const QuartInt& x, const QuartInt& y) { return x * y; }

QuartInt operator*(const QuartInt& x, const BigInt& k) {
  return {x.c[0] * k, x.c[1] * k, x.c[2] * k, x.c[3] * k, x.p};
}

QuartInt pow(const QuartInt& x, unsigned n) {
  QuartInt r = QuartInt::rational(1, x.p), b = x;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

QuadInt norm_KF(const QuartInt& x) {
  // (A1 + A2 r)(A1 - A2 r) = A1^2 - A2^2 sqrt(p)
  QuadInt a1 = x.A1(), a2sq = x.A2() * x.A2();
  QuadInt sqrtp_a2sq{a2sq.b * x.p, a2sq.a, x.p};
  return a1 * a1 - sqrtp_a2sq;
}

QuadInt trace_KF(const QuartInt& x) { return x.A1() * BigInt(2); }

BigInt absolute_norm(const QuartInt& x) {
  const BigInt &a1 = x.c[0], &a2 = x.c[1], &a3 = x.c[2], &a4 = x.c[3];
  const BigInt p(static_cast<long>(x.p));
  const BigInt p2 = p * p, p3 = p2 * p;
  const BigInt a1_2 = a1 * a1, a2_2 = a2 * a2, a3_2 = a3 * a3, a4_2 = a4 * a4;
  return a1_2 * a1_2 - a2_2 * a2_2 * p + 4 * a1 * a2_2 * a3 * p - 2 * a1_2 * a3_2 * p - 4 * a1_2 * a2 * a4 * p +
         a3_2 * a3_2 * p2 - 4 * a2 * a3_2 * a4 * p2 + 2 * a2_2 * a4_2 * p2 + 4 * a1 * a3 * a4_2 * p2 -
         a4_2 * a4_2 * p3;
}

int sign(const QuartInt& x) {
  int s1 = quad::sign(x.A1()), s2 = quad::sign(x.A2());
  if (s2 == 0) return s1;
  if (s1 == 0 || s1 == s2) return s2;
  // A1 and A2 r of opposite sign: the larger magnitude wins, and
  // A1^2 - A2^2 sqrt(p) = norm_KF(x) compares them.
  return quad::sign(norm_KF(x)) > 0 ? s1 : s2;
}

std::optional<QuartInt> exact_div(const QuartInt& x, const QuartInt& y) {
  same_field(x, y);
  if (y.is_zero()) throw PreconditionError("exact_div: division by zero");
  // 1/y = sigma(y) * conj(N_KF(y)) / N(y)
  QuadInt nkf = norm_KF(y);
  BigInt n = quad::norm_F(nkf);
  QuartInt t = x * y.sigma() * QuartInt::from_quad(nkf.conj());
  for (const auto& v : t.c)
    if (v % n != 0) return std::nullopt;
  return QuartInt{t.c[0] / n, t.c[1] / n, t.c[2] / n, t.c[3] / n, x.p};
}

QuartInt unit_inverse(const QuartInt& u) {
  auto inv = exact_div(QuartInt::rational(1, u.p), u);
  if (!inv) throw PreconditionError("unit_inverse: " + to_string(u) + " is not a unit");
  return *inv;
}

QuartInt pow_signed(const QuartInt& u, long n) {
  if (n >= 0) return pow(u, static_cast<unsigned>(n));
  return pow(unit_inverse(u), static_cast<unsigned>(-n));
}

arith::IntMatrix mult_matrix(const QuartInt& x) {
  arith::IntMatrix m(4, 4);
  QuartInt col = x;
  const QuartInt r = QuartInt::root(x.p);
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 4; ++i) m(i, j) = col.c[i];
    col = col * r;
  }
  return m;
}

std::string to_string(const QuartInt& x) {
  static const char* kMonomial[] = {"", "r", "r^2", "r^3"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 4; ++i) {
    const BigInt& v = x.c[i];
    if (v == 0) continue;
    if (!first) os << (v > 0 ? "+" : "-");
    else if (v < 0) os << "-";
    BigInt av = abs(v);
    if (i == 0) os << av;
    else if (av == 1) os << kMonomial[i];
    else os << av << "*" << kMonomial[i];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

QuartInt parse_quartint(const std::string& text, std::int64_t p) {
  QuartInt x = QuartInt::rational(0, p);
  const BigInt P(static_cast<long>(p));
  for (auto& [e, coeff] : quad::parse_terms(text)) x.c[e % 4] += coeff * arith::pow(P, e / 4);
  return x;
}

}  // namespace qck::quart
