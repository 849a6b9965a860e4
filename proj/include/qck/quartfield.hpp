#pragma once

// Arithmetic in K = Q(r), r = p^(1/4), over the order Z[r] (= O_K for the
// primes handled here).  Real embedding fixes r > 0.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qck/arith.hpp"
#include "qck/intmat.hpp"
#include "qck/error.hpp"
#include "qck/quadfield.hpp"
#include "qck/real.hpp"

namespace qck::quart {

using quad::QuadInt;
using arith::Real;

// a1 + a2 r + a3 r^2 + a4 r^3, stored as c[0..3]
struct QuartInt {
  std::array<BigInt, 4> c;
  std::int64_t p = 0;

  QuartInt() = default;
  QuartInt(BigInt a1, BigInt a2, BigInt a3, BigInt a4, std::int64_t p_)
      : c{std::move(a1), std::move(a2), std::move(a3), std::move(a4)}, p(p_) {}

  static QuartInt rational(const BigInt& a, std::int64_t p) { return {a, 0, 0, 0, p}; }
  static QuartInt from_quad(const QuadInt& x) { return {x.a, 0, x.b, 0, x.p}; }
  static QuartInt root(std::int64_t p) { return {0, 1, 0, 0, p}; }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  bool in_OF() const { return c[1] == 0 && c[3] == 0; }
  QuadInt A1() const { return {c[0], c[2], p}; }  // x = A1 + A2 r
  QuadInt A2() const { return {c[1], c[3], p}; }
  QuartInt sigma() const { return {c[0], -c[1], c[2], -c[3], p}; }  // r -> -r
  QuartInt operator-() const { return {-c[0], -c[1], -c[2], -c[3], p}; }
  bool operator==(const QuartInt& o) const { return c == o.c && p == o.p; }
  bool operator<(const QuartInt& o) const { return c < o.c; }
};

QuartInt operator+(const QuartInt& x, const QuartInt& y);
QuartInt operator-(const QuartInt& x, const QuartInt& y);
QuartInt operator*(const QuartInt& x, const QuartInt& y);
QuartInt operator*(const QuartInt& x, const BigInt& k);
QuartInt pow(const QuartInt& x, unsigned n);
QuartInt mul(const QuartInt& x, const QuartInt& y);  // same as operator*

QuadInt norm_KF(const QuartInt& x);   // A1^2 - sqrt(p) A2^2
QuadInt trace_KF(const QuartInt& x);  // 2 A1
BigInt absolute_norm(const QuartInt& x);  // explicit degree-4 expansion
int sign(const QuartInt& x);              // exact sign under r > 0

std::optional<QuartInt> exact_div(const QuartInt& x, const QuartInt& y);
// 1/u for a unit u (|N(u)| = 1)
QuartInt unit_inverse(const QuartInt& u);
QuartInt pow_signed(const QuartInt& u, long n);  // u^n, u a unit when n < 0

// Multiplication by x as a 4x4 integer matrix on the power basis
// (column j = coordinates of x * r^j).
arith::IntMatrix mult_matrix(const QuartInt& x);

std::string to_string(const QuartInt& x);
QuartInt parse_quartint(const std::string& text, std::int64_t p);

// ---------------------------------------------------------------------------
// Square roots.

enum class Membership { in_OF, in_OK_minus_OF, not_integral };
std::string to_string(Membership m);

// Roots of x^2 + A1 x + A0 over O_F, classified by the discriminant.
Membership membership_by_discriminant(const QuadInt& A1, const QuadInt& A0);

// sqrt(x) for x in O_K - O_F, x > 0, norm_KF(x) a square in O_F (otherwise
// PreconditionError).  Absent when neither sign of C^2 = A +- 2B works.
std::optional<QuartInt> has_integral_sqrt(const QuartInt& x);

// Any square root in O_K (positive under the real embedding when possible).
std::optional<QuartInt> sqrt_in_OK(const QuartInt& x);

// ---------------------------------------------------------------------------
// Embeddings: s1(r) = rho, s2(r) = -rho, s3(r) = i rho, rho = p^(1/4) > 0.

struct Embeddings {
  Real s1, s2, re3, im3;
};
Embeddings embed(const QuartInt& x, mpfr_prec_t prec);
// (log|s1 x|, log|s2 x|, log|s3 x|); x nonzero
std::array<Real, 3> log_embedding(const QuartInt& x, mpfr_prec_t prec);

// Thrown when floating-point reduction or enumeration loses too much
// precision; callers retry at higher precision.
class NumericFailure : public InternalError {
 public:
  using InternalError::InternalError;
};

// LLL on real row vectors with delta = 0.99.  Returns the integer transform
// T (new_i = sum_j T(i,j) old_j) and replaces `basis` by the reduced rows.
arith::IntMatrix lll(std::vector<std::vector<Real>>& basis);

// Fincke-Pohst: calls visit(x) for every nonzero integer vector x with
// |sum x_i b_i|^2 <= bound (plus a tiny relative slack).  visit returns false
// to stop early; enumerate_short then returns false.
bool enumerate_short(const std::vector<std::vector<Real>>& basis, const Real& bound,
                     const std::function<bool(const std::vector<long>&)>& visit, const Deadline& deadline);

// Elements of the Z-lattice spanned by `basis` (4 elements of K) with
//   e^{-2w1}|s1 x|^2 + e^{-2w2}|s2 x|^2 + 2 e^{-2w3}|s3 x|^2 <= bound.
// `basis` is replaced by an LLL-reduced basis of the same lattice (for reuse
// in neighbouring cells).  Returns false if visit stopped the enumeration.
bool enumerate_weighted(std::vector<QuartInt>& basis, const std::array<double, 3>& w, double bound,
                        const std::function<bool(const QuartInt&)>& visit, const Deadline& deadline,
                        mpfr_prec_t prec);

// LLL-reduced basis of the same lattice for the weights w (as above).
std::vector<QuartInt> reduce_lattice_basis(std::vector<QuartInt> basis, const std::array<double, 3>& w);

// Square cells of half-side delta in the (log|s1|, log|s2|) plane.
struct Cell {
  double y1, y2;
};
// Cells covering the parallelogram center + s v1 + t v2, |s|,|t| <= 1/2,
// ordered by distance from the center (ties by coordinates).
std::vector<Cell> cover_parallelogram(std::array<double, 2> center, std::array<double, 2> v1,
                                      std::array<double, 2> v2, double delta);
// Half-side so that a cell holds about one element of norm N for the given
// field (never below 0.25).
double default_cell_half_side(std::int64_t p);

// Search every cell for elements of `lattice_basis` with |N(x)| = norm.
// The weighted bound 4 e^{2 delta} makes each cell search complete.  An
// element may be reported from more than one cell.
void search_cells(const std::vector<QuartInt>& lattice_basis, const BigInt& norm, const std::vector<Cell>& cells,
                  double delta, const std::function<bool(const QuartInt&, std::size_t cell)>& visit,
                  const Deadline& deadline, mpfr_prec_t prec);

// ---------------------------------------------------------------------------
// Units.

struct UnitBasis {
  QuartInt mu1;  // norm_KF(mu1) = +-1
  QuartInt mu2;  // norm_KF(mu2) = +-U_F
  int mu1_norm_sign = 1;
  int mu2_norm_sign = 1;
  bool certified = false;  // fundamentality proven by index enumeration
  double regulator = 0;    // |det| of the (log|s1|, log|s2|) matrix of mu1, mu2
};

// Throws ResourceLimit if no second independent unit turns up within the
// search radius.  A deadline hit during certification yields certified = false.
UnitBasis unit_group_basis(std::int64_t p, const Deadline& deadline = Deadline::never());

// Log vectors (log|s1|, log|s2|) of the two basis units.
std::array<std::array<double, 2>, 2> unit_log_matrix(const UnitBasis& b);

// ---------------------------------------------------------------------------
// Per-field cached data.  Immutable once built; the unit basis is computed
// on first use.

class Field {
 public:
  static std::shared_ptr<const Field> get(std::int64_t p);

  std::int64_t p() const { return p_; }
  const QuadInt& U_F() const { return uf_; }
  const quad::L2Result& L2() const { return l2_; }
  BigInt discriminant() const;  // -256 p^3
  BigInt minkowski_bound() const;
  // Only certified bases are cached.
  UnitBasis units(const Deadline& deadline = Deadline::never()) const;

  explicit Field(std::int64_t p);

 private:
  std::int64_t p_;
  QuadInt uf_;
  quad::L2Result l2_;
  mutable std::mutex mu_;
  mutable std::optional<UnitBasis> units_;
};

// ceil((4!/4^4)(4/pi) sqrt(256 p^3)) = ceil((6/pi) p^{3/2}), evaluated exactly
// enough to decide the ceiling.
BigInt minkowski_bound(std::int64_t p);

}  // namespace qck::quart
