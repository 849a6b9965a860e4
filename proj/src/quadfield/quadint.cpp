#include <cctype>
#include <cmath>
#include <sstream>

#include "qck/error.hpp"
#include "qck/quadfield.hpp"

namespace qck::quad {

using arith::floor_div;
using arith::is_square;
using arith::isqrt;

void validate_field_prime(std::int64_t p) {
  if (p <= 0 || p % 16 != 7)
    throw InvalidField("p = " + std::to_string(p) + " does not satisfy p = 7 (mod 16)");
  if (!arith::is_prime(BigInt(static_cast<long>(p))))
    throw InvalidField("p = " + std::to_string(p) + " is not prime");
}

namespace {

void same_field(const QuadInt& x, const QuadInt& y) {
  if (x.p != y.p)
    throw ContextMismatch("QuadInt from fields p=" + std::to_string(x.p) + " and p=" + std::to_string(y.p));
}

}  // namespace

QuadInt operator+(const QuadInt& x, const QuadInt& y) {
  same_field(x, y);
  return {x.a + y.a, x.b + y.b, x.p};
}

QuadInt operator-(const QuadInt& x, const QuadInt& y) {
  same_field(x, y);
  return {x.a - y.a, x.b - y.b, x.p};
}

QuadInt operator*(const QuadInt& x, const QuadInt& y) {
  same_field(x, y);
  return {x.a * y.a + x.b * y.b * x.p, x.a * y.b + x.b * y.a, x.p};
}

QuadInt operator*(const QuadInt& x, const BigInt& k) { return {x.a * k, x.b * k, x.p}; }

QuadInt pow(const QuadInt& x, unsigned n) {
  QuadInt r = QuadInt::rational(1, x.p), b = x;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

BigInt norm_F(const QuadInt& x) { return x.a * x.a - x.b * x.b * x.p; }

BigInt trace_F(const QuadInt& x) { return 2 * x.a; }

int sign(const QuadInt& x) {
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: compare a^2 with p b^2 (never equal, p not a square)
  return (x.a * x.a > x.b * x.b * x.p) ? sa : sb;
}

std::optional<QuadInt> exact_div(const QuadInt& x, const QuadInt& y) {
  same_field(x, y);
  if (y.is_zero()) throw PreconditionError("exact_div: division by zero");
  BigInt n = norm_F(y);
  QuadInt t = x * y.conj();
  if (t.a % n != 0 || t.b % n != 0) return std::nullopt;
  return QuadInt{t.a / n, t.b / n, x.p};
}

bool divides(const QuadInt& y, const QuadInt& x) { return exact_div(x, y).has_value(); }

double approx(const QuadInt& x) {
  return x.a.get_d() + x.b.get_d() * std::sqrt(static_cast<double>(x.p));
}

QuadInt fundamental_unit(std::int64_t p) {
  if (p <= 1 || is_square(BigInt(static_cast<long>(p))))
    throw PreconditionError("fundamental_unit: p must be a nonsquare > 1");
  // Continued fraction of sqrt(p): sqrt(p) = [a0; a1, a2, ...] with
  // convergents h/k; the first with h^2 - p k^2 = +-1 gives the unit.
  const BigInt P(static_cast<long>(p));
  const BigInt a0 = isqrt(P);
  BigInt m = 0, d = 1, a = a0;
  BigInt h_prev = 1, h = a0, k_prev = 0, k = 1;
  for (;;) {
    BigInt n = h * h - P * k * k;
    if (n == 1 || n == -1) {
      QuadInt u{h, k, p};
      if (n == -1) u = u * u;
      if (norm_F(u) != 1) throw InternalError("fundamental_unit: norm check failed");
      return u;
    }
    m = d * a - m;
    d = (P - m * m) / d;
    a = (a0 + m) / d;
    BigInt h2 = a * h + h_prev, k2 = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h2;
    k = k2;
  }
}

L2Result compute_L2(std::int64_t p) {
  validate_field_prime(p);
  const QuadInt U = fundamental_unit(p);
  if (norm_F(U) != 1) throw InternalError("compute_L2: U_F has norm -1");
  // For 2 < sqrt(p) every solution of |x^2 - p y^2| = 2 is a convergent of sqrt(p).
  const BigInt P(static_cast<long>(p));
  const BigInt a0 = isqrt(P);
  BigInt m = 0, d = 1, a = a0;
  BigInt h_prev = 1, h = a0, k_prev = 0, k = 1;
  std::optional<QuadInt> x;
  // one period of the expansion suffices; bound by the size of U_F's coordinates
  while (k <= U.b) {
    BigInt n = h * h - P * k * k;
    if (n == 2 || n == -2) {
      x = QuadInt{h, k, p};
      break;
    }
    m = d * a - m;
    d = (P - m * m) / d;
    a = (a0 + m) / d;
    BigInt h2 = a * h + h_prev, k2 = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h2;
    k = k2;
  }
  if (!x) throw InternalError("compute_L2: no element of norm +-2 for p = " + std::to_string(p));

  // x^2 = 2 U_F^t for some integer t, since <x>^2 = <2>.
  QuadInt u = *x * *x;
  if (u.a % 2 != 0 || u.b % 2 != 0) throw InternalError("compute_L2: x^2 not divisible by 2");
  u = QuadInt{u.a / 2, u.b / 2, p};
  const QuadInt Ui = U.conj();
  const QuadInt one = QuadInt::rational(1, p);
  int t = 0;
  while (!(u == one)) {
    if (sign(u - one) > 0) {
      u = u * Ui;
      ++t;
    } else {
      u = u * U;
      --t;
    }
    if (std::abs(t) > 64) throw InternalError("compute_L2: x^2/2 is not a power of U_F");
  }
  if (t % 2 == 0) throw InternalError("compute_L2: sqrt 2 would lie in F");
  // L2 = x * U_F^{-(t+1)/2}  gives  L2^2 = 2 U_F^{-1},  so e = +1.
  int j = (t + 1) / 2;
  QuadInt L = *x;
  for (int i = 0; i < std::abs(j); ++i) L = L * (j > 0 ? Ui : U);
  if (sign(L) < 0) L = -L;
  if (!(L * L * U == QuadInt::rational(2, p))) throw InternalError("compute_L2: identity 2 = L2^2 U_F failed");
  return {L, 1};
}

std::optional<QuadInt> sqrt_in_OF(const QuadInt& x) {
  if (x.is_zero()) return x;
  // C = c1 + c2 sqrt p:  c1^2 + p c2^2 = a,  2 c1 c2 = b,  N(C) = +-sqrt(N(x)).
  BigInt nx = norm_F(x);
  if (!is_square(nx) || x.a < 0) return std::nullopt;
  BigInt n = isqrt(nx);
  const BigInt P(static_cast<long>(x.p));
  for (int s : {1, -1}) {
    BigInt t1 = x.a + s * n, t2 = x.a - s * n;
    if (t1 % 2 != 0 || t2 % (2 * P) != 0) continue;
    BigInt c1sq = t1 / 2, c2sq = t2 / (2 * P);
    if (!is_square(c1sq) || !is_square(c2sq)) continue;
    BigInt c1 = isqrt(c1sq), c2 = isqrt(c2sq);
    if (2 * c1 * c2 != abs(x.b)) continue;
    if (x.b < 0) c2 = -c2;
    QuadInt c{c1, c2, x.p};
    if (sign(c) < 0) c = -c;
    if (!(c * c == x)) continue;
    return c;
  }
  return std::nullopt;
}

std::string to_string(const QuadInt& x) {
  std::ostringstream os;
  if (x.b == 0) {
    os << x.a;
  } else {
    if (x.a != 0) os << x.a << (x.b > 0 ? "+" : "-");
    else if (x.b < 0) os << "-";
    BigInt ab = abs(x.b);
    if (ab != 1) os << ab << "*";
    os << "s";
  }
  return os.str();
}

std::map<unsigned, BigInt> parse_terms(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw PreconditionError("empty element literal");
  std::map<unsigned, BigInt> out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw PreconditionError("cannot parse element literal '" + text + "': " + why);
  };
  auto read_int = [&](BigInt& v) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return false;
    v = BigInt(s.substr(i, j - i));
    i = j;
    return true;
  };
  bool first = true;
  while (i < s.size()) {
    int sgn_term = 1;
    if (s[i] == '+' || s[i] == '-') {
      sgn_term = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    BigInt coeff = 1;
    bool have_coeff = read_int(coeff);
    if (have_coeff && i < s.size() && s[i] == '*') ++i;
    unsigned e = 0;
    if (i < s.size() && (s[i] == 'r' || s[i] == 's')) {
      unsigned base = s[i] == 'r' ? 1 : 2;
      ++i;
      BigInt k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_int(k)) fail("missing exponent");
      }
      if (k > 64) fail("exponent too large");
      e = base * static_cast<unsigned>(k.get_ui());
    } else if (!have_coeff) {
      fail("expected a number or variable at position " + std::to_string(i));
    } else if (i > 0 && s[i - 1] == '*') {
      fail("dangling '*'");
    }
    out[e] += sgn_term * coeff;
  }
  return out;
}

QuadInt parse_quadint(const std::string& text, std::int64_t p) {
  QuadInt x{0, 0, p};
  const BigInt P(static_cast<long>(p));
  for (auto& [e, c] : parse_terms(text)) {
    if (e % 2 != 0) throw PreconditionError("'" + text + "' is not in O_F (odd power of r)");
    // s^k = p^{k/2} or p^{(k-1)/2} s
    unsigned k = e / 2;
    BigInt pk = arith::pow(P, k / 2);
    if (k % 2 == 0) x.a += c * pk;
    else x.b += c * pk;
  }
  return x;
}

}  // namespace qck::quad
