#include <sstream>

#include "qck/ideals.hpp"

namespace qck::ideals {

using arith::IntMatrix;
using arith::IntRow;

namespace {

// Coordinates reversed so that the row-style HNF of the reversed vectors is
// the column-style upper-triangular form used here.
IntRow reversed(const QuartInt& x) { return {x.c[3], x.c[2], x.c[1], x.c[0]}; }

IntMatrix from_reversed_rows(const IntMatrix& r) {
  IntMatrix h(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h(i, j) = r(3 - j, 3 - i);
  return h;
}

IntMatrix module_hnf(const std::vector<QuartInt>& span, const BigInt& modulus) {
  std::vector<IntRow> rows;
  rows.reserve(span.size());
  for (const auto& x : span) rows.push_back(reversed(x));
  return from_reversed_rows(arith::hnf_mod(rows, 4, modulus));
}

void same_field(const Ideal& a, const Ideal& b) {
  if (a.p() != b.p())
    throw ContextMismatch("ideals from fields p=" + std::to_string(a.p()) + " and p=" + std::to_string(b.p()));
}

BigInt det3(const IntMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  std::size_t r[3], c[3];
  for (std::size_t i = 0, k = 0; i < 4; ++i)
    if (i != skip_row) r[k++] = i;
  for (std::size_t j = 0, k = 0; j < 4; ++j)
    if (j != skip_col) c[k++] = j;
  auto e = [&](int i, int j) -> const BigInt& { return m(r[i], c[j]); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

}  // namespace

Ideal::Ideal(IntMatrix h, std::int64_t p) : h_(std::move(h)), p_(p) {
  norm_ = h_(0, 0) * h_(1, 1) * h_(2, 2) * h_(3, 3);
}

Ideal Ideal::from_generators(const std::vector<QuartInt>& gens) {
  if (gens.empty()) throw PreconditionError("ideal_from_generators: no generators");
  const std::int64_t p = gens.front().p;
  BigInt modulus = 0;
  std::vector<QuartInt> span;
  const QuartInt r = QuartInt::root(p);
  for (const auto& g : gens) {
    if (g.p != p) throw ContextMismatch("ideal_from_generators: generators from different fields");
    if (g.is_zero()) continue;
    modulus = arith::gcd(modulus, abs(quart::absolute_norm(g)));
    QuartInt t = g;
    for (int k = 0; k < 4; ++k, t = t * r) span.push_back(t);
  }
  if (modulus == 0) throw PreconditionError("ideal_from_generators: zero ideal");
  return Ideal(module_hnf(span, modulus), p);
}

Ideal Ideal::unit(std::int64_t p) { return Ideal(IntMatrix::identity(4), p); }

Ideal Ideal::from_hnf(const IntMatrix& h, std::int64_t p) {
  if (h.rows() != 4 || h.cols() != 4) throw PreconditionError("ideal HNF must be 4x4");
  for (std::size_t i = 0; i < 4; ++i) {
    if (h(i, i) <= 0) throw PreconditionError("ideal HNF: nonpositive diagonal entry");
    for (std::size_t j = 0; j < i; ++j)
      if (h(i, j) != 0) throw PreconditionError("ideal HNF: not upper triangular");
    for (std::size_t j = i + 1; j < 4; ++j)
      if (h(i, j) < 0 || h(i, j) >= h(i, i)) throw PreconditionError("ideal HNF: entries not reduced");
  }
  Ideal a(h, p);
  const QuartInt r = QuartInt::root(p);
  for (const auto& b : a.basis())
    if (!a.contains(b * r)) throw PreconditionError("ideal HNF: module not closed under multiplication by r");
  return a;
}

std::vector<QuartInt> Ideal::basis() const {
  std::vector<QuartInt> out;
  for (std::size_t j = 0; j < 4; ++j) out.push_back({h_(0, j), h_(1, j), h_(2, j), h_(3, j), p_});
  return out;
}

bool Ideal::contains(const QuartInt& x) const {
  if (x.p != p_) throw ContextMismatch("Ideal::contains: element from another field");
  std::array<BigInt, 4> rest = x.c;
  for (int j = 3; j >= 0; --j) {
    if (rest[j] % h_(j, j) != 0) return false;
    BigInt y = rest[j] / h_(j, j);
    if (y != 0)
      for (int i = 0; i <= j; ++i) rest[i] -= y * h_(i, j);
  }
  return true;
}

bool Ideal::contains(const Ideal& b) const {
  same_field(*this, b);
  if (b.norm_ % norm_ != 0) return false;
  for (const auto& x : b.basis())
    if (!contains(x)) return false;
  return true;
}

bool Ideal::operator<(const Ideal& o) const {
  if (norm_ != o.norm_) return norm_ < o.norm_;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      if (h_(i, j) != o.h_(i, j)) return h_(i, j) < o.h_(i, j);
  return false;
}

Ideal operator*(const Ideal& a, const Ideal& b) {
  same_field(a, b);
  if (a.is_unit()) return b;
  if (b.is_unit()) return a;
  std::vector<QuartInt> span;
  auto ba = a.basis(), bb = b.basis();
  for (const auto& x : ba)
    for (const auto& y : bb) span.push_back(x * y);
  return Ideal::from_hnf_unchecked(module_hnf(span, a.norm() * b.norm()), a.p());
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  same_field(a, b);
  auto span = a.basis();
  for (const auto& y : b.basis()) span.push_back(y);
  return Ideal::from_hnf_unchecked(module_hnf(span, arith::gcd(a.norm(), b.norm())), a.p());
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) { return a * b; }
Ideal ideal_sum(const Ideal& a, const Ideal& b) { return a + b; }

Ideal pow(const Ideal& a, unsigned n) {
  Ideal r = Ideal::unit(a.p()), b = a;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Ideal scaled_inverse(const Ideal& a) {
  // y lies in a^{-1} iff the r^3-coefficient of y h_j is integral for every
  // basis element h_j (Euler's formula for the dual of Z[r]).  With
  // G(j,i) = [r^3](r^i h_j), a^{-1} = G^{-1} Z^4 and |det G| = N(a), so
  // N(a) a^{-1} is spanned by the columns of adj(G).
  const std::int64_t p = a.p();
  IntMatrix g(4, 4);
  auto hb = a.basis();
  for (std::size_t j = 0; j < 4; ++j) {
    QuartInt t = hb[j];
    for (std::size_t i = 0; i < 4; ++i, t = t * QuartInt::root(p)) g(j, i) = t.c[3];
  }
  std::vector<QuartInt> span;
  for (std::size_t col = 0; col < 4; ++col) {
    // column col of adj(G): entries (-1)^{i+col} det of G without row col, column i
    QuartInt y{0, 0, 0, 0, p};
    for (std::size_t i = 0; i < 4; ++i) {
      BigInt m = det3(g, col, i);
      y.c[i] = ((i + col) % 2 == 0) ? m : BigInt(-m);
    }
    span.push_back(y);
  }
  return Ideal::from_hnf_unchecked(module_hnf(span, a.norm() * a.norm() * a.norm()), p);
}

std::optional<Ideal> divide(const Ideal& a, const BigInt& m) {
  if (m == 0) throw PreconditionError("divide: by zero");
  BigInt am = abs(m);
  IntMatrix h = a.hnf();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) {
      if (h(i, j) % am != 0) return std::nullopt;
      h(i, j) /= am;
    }
  return Ideal::from_hnf_unchecked(std::move(h), a.p());
}

std::optional<Ideal> divide(const Ideal& a, const Ideal& b) {
  same_field(a, b);
  if (a.norm() % b.norm() != 0) return std::nullopt;
  return divide(a * scaled_inverse(b), b.norm());
}

std::string to_string(const Ideal& a) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < 4; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < 4; ++j) os << (j ? "," : "") << a.hnf()(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace qck::ideals
