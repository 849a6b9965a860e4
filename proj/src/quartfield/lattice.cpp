#include <algorithm>
#include <cmath>

#include "qck/quartfield.hpp"

namespace qck::quart {

using arith::IntMatrix;

Embeddings embed(const QuartInt& x, mpfr_prec_t prec) {
  Real rho = sqrt(sqrt(Real(static_cast<long>(x.p), prec)));
  Real rho2 = rho * rho;
  Real rho3 = rho2 * rho;
  Real a(x.c[0], prec), b = Real(x.c[1], prec) * rho, c = Real(x.c[2], prec) * rho2,
       d = Real(x.c[3], prec) * rho3;
  Real even = a + c, odd = b + d;
  return {even + odd, even - odd, a - c, b - d};
}

std::array<Real, 3> log_embedding(const QuartInt& x, mpfr_prec_t prec) {
  if (x.is_zero()) throw PreconditionError("log_embedding of zero");
  Embeddings e = embed(x, prec);
  Real m3 = e.re3 * e.re3 + e.im3 * e.im3;
  if (e.s1.sign() == 0 || e.s2.sign() == 0 || m3.sign() == 0)
    throw NumericFailure("log_embedding: embedding rounded to zero at " + std::to_string(prec) + " bits");
  Real half(0.5, prec);
  return {log(abs(e.s1)), log(abs(e.s2)), half * log(m3)};
}

namespace {

Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
  Real s(a.front().precision());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct GramSchmidt {
  std::vector<std::vector<Real>> mu;
  std::vector<Real> B;  // |b*_i|^2
};

GramSchmidt gram_schmidt(const std::vector<std::vector<Real>>& b) {
  const std::size_t n = b.size();
  const mpfr_prec_t prec = b.front().front().precision();
  GramSchmidt gs{std::vector<std::vector<Real>>(n, std::vector<Real>(n, Real(prec))), std::vector<Real>(n, Real(prec))};
  std::vector<std::vector<Real>> bs = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(b[i], bs[j]) / gs.B[j];
      for (std::size_t k = 0; k < bs[i].size(); ++k) bs[i][k] -= gs.mu[i][j] * bs[j][k];
    }
    gs.B[i] = dot(bs[i], bs[i]);
    if (!(gs.B[i] > 0.0)) throw NumericFailure("LLL: basis numerically dependent");
  }
  return gs;
}

}  // namespace

IntMatrix lll(std::vector<std::vector<Real>>& b) {
  const std::size_t n = b.size();
  IntMatrix T = IntMatrix::identity(n);
  if (n <= 1) return T;
  const mpfr_prec_t prec = b.front().front().precision();
  const Real delta(0.99, prec), half(0.5, prec);
  GramSchmidt gs = gram_schmidt(b);
  std::size_t k = 1;
  long iterations = 0;
  while (k < n) {
    if (++iterations > 200000) throw NumericFailure("LLL: no convergence");
    for (std::size_t jj = k; jj-- > 0;) {
      if (!(abs(gs.mu[k][jj]) > half)) continue;
      BigInt q = gs.mu[k][jj].round();
      Real qr(q, prec);
      for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= qr * b[jj][c];
      for (std::size_t c = 0; c < n; ++c) T(k, c) -= q * T(jj, c);
      for (std::size_t i = 0; i < jj; ++i) gs.mu[k][i] -= qr * gs.mu[jj][i];
      gs.mu[k][jj] -= qr;
    }
    Real lhs = gs.B[k];
    Real rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      for (std::size_t c = 0; c < n; ++c) std::swap(T(k, c), T(k - 1, c));
      gs = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return T;
}

bool enumerate_short(const std::vector<std::vector<Real>>& b, const Real& bound,
                     const std::function<bool(const std::vector<long>&)>& visit, const Deadline& deadline) {
  const std::size_t n = b.size();
  const mpfr_prec_t prec = bound.precision();
  // Cholesky of the Gram matrix: Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2
  std::vector<std::vector<Real>> q(n, std::vector<Real>(n, Real(prec)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = dot(b[i], b[j]);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(q[i][i] > 0.0)) throw NumericFailure("enumerate_short: Gram matrix not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) {
      Real t = q[i][j];
      q[j][i] = t;
      q[i][j] = t / q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  // tiny relative slack so that points exactly on the boundary survive rounding
  Real C = bound + abs(bound) * Real(1e-20, prec) + Real(1e-30, prec);

  std::vector<long> x(n, 0);
  std::vector<Real> remaining(n + 1, Real(prec));
  remaining[n] = C;
  long nodes = 0;
  bool stopped = false;

  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stopped) return;
    if ((++nodes & 1023) == 0) deadline.check("short vector enumeration");
    Real center(prec);
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * Real(x[j], prec);
    Real rem = remaining[i + 1];
    if (rem.sign() < 0) return;
    Real radius = sqrt(rem / q[i][i]);
    Real lo_r = center - radius, hi_r = center + radius;
    if (abs(lo_r) > 1e15 || abs(hi_r) > 1e15) throw NumericFailure("enumerate_short: search range too large");
    long lo = lo_r.ceil().get_si(), hi = hi_r.floor().get_si();
    for (long v = lo; v <= hi && !stopped; ++v) {
      x[i] = v;
      Real diff = Real(v, prec) - center;
      remaining[i] = rem - q[i][i] * diff * diff;
      if (remaining[i].sign() < 0) continue;
      if (i == 0) {
        if (std::any_of(x.begin(), x.end(), [](long t) { return t != 0; }) && !visit(x)) stopped = true;
      } else {
        rec(i - 1);
      }
    }
    x[i] = 0;
  };
  rec(n - 1);
  return !stopped;
}

namespace {

std::vector<std::vector<Real>> weighted_vectors(const std::vector<QuartInt>& basis, const std::array<Real, 3>& scale,
                                                mpfr_prec_t prec) {
  std::vector<std::vector<Real>> v;
  for (const auto& g : basis) {
    Embeddings e = embed(g, prec);
    v.push_back({e.s1 * scale[0], e.s2 * scale[1], e.re3 * scale[2], e.im3 * scale[2]});
  }
  return v;
}

QuartInt combine(const std::vector<QuartInt>& basis, const std::vector<long>& x) {
  QuartInt r = QuartInt::rational(0, basis.front().p);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (x[i] != 0) r = r + basis[i] * BigInt(x[i]);
  return r;
}

constexpr double kMaxWeightStep = 4.0;

// Embedding x loses about log2 of its largest coefficient to cancellation
// in the small conjugates.
mpfr_prec_t precision_for(const std::vector<QuartInt>& xs, mpfr_prec_t floor) {
  std::size_t bits = 0;
  for (const auto& x : xs)
    for (const auto& c : x.c) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return std::max(floor, static_cast<mpfr_prec_t>(64 + 2 * bits));
}

// LLL-reduce `basis` for the weights w; returns the weighted vectors of the
// reduced elements at a precision that survives their cancellation.
std::vector<std::vector<Real>> reduce_weighted(std::vector<QuartInt>& basis, const std::array<double, 3>& w,
                                               mpfr_prec_t& pr) {
  auto scales = [&] {
    return std::array<Real, 3>{exp(Real(-w[0], pr)), exp(Real(-w[1], pr)),
                               sqrt(Real(2L, pr)) * exp(Real(-w[2], pr))};
  };
  pr = precision_for(basis, pr);
  auto v = weighted_vectors(basis, scales(), pr);
  IntMatrix T = lll(v);
  std::vector<QuartInt> reduced;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    QuartInt r = QuartInt::rational(0, basis.front().p);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (T(i, j) != 0) r = r + basis[j] * T(i, j);
    reduced.push_back(r);
  }
  // embeddings of the exact reduced elements, not the drifted LLL rows
  pr = precision_for(reduced, pr);
  basis = reduced;
  return weighted_vectors(basis, scales(), pr);
}

}  // namespace

bool enumerate_weighted(std::vector<QuartInt>& basis, const std::array<double, 3>& w, double bound,
                        const std::function<bool(const QuartInt&)>& visit, const Deadline& deadline,
                        mpfr_prec_t prec) {
  for (mpfr_prec_t pr = prec;; pr *= 2) {
    try {
      auto v = reduce_weighted(basis, w, pr);
      return enumerate_short(
          v, Real(bound, pr), [&](const std::vector<long>& x) { return visit(combine(basis, x)); }, deadline);
    } catch (const NumericFailure&) {
      if (pr >= 1 << 16) throw;
    }
  }
}

std::vector<QuartInt> reduce_lattice_basis(std::vector<QuartInt> basis, const std::array<double, 3>& w) {
  for (mpfr_prec_t pr = Real::kDefaultPrecision;; pr *= 2) {
    try {
      std::vector<QuartInt> b = basis;
      reduce_weighted(b, w, pr);
      return b;
    } catch (const NumericFailure&) {
      if (pr >= 1 << 16) throw;
    }
  }
}

std::vector<Cell> cover_parallelogram(std::array<double, 2> c, std::array<double, 2> v1, std::array<double, 2> v2,
                                      double delta) {
  double det = v1[0] * v2[1] - v2[0] * v1[1];
  if (std::abs(det) < 1e-12) throw PreconditionError("cover_parallelogram: degenerate parallelogram");
  // inverse of [v1 v2] (columns)
  double i00 = v2[1] / det, i01 = -v2[0] / det, i10 = -v1[1] / det, i11 = v1[0] / det;
  double slack_s = 0.5 + delta * (std::abs(i00) + std::abs(i01)) + 1e-9;
  double slack_t = 0.5 + delta * (std::abs(i10) + std::abs(i11)) + 1e-9;
  double ex = 0.5 * (std::abs(v1[0]) + std::abs(v2[0])) + delta;
  double ey = 0.5 * (std::abs(v1[1]) + std::abs(v2[1])) + delta;
  long nx = static_cast<long>(std::ceil(ex / (2 * delta))), ny = static_cast<long>(std::ceil(ey / (2 * delta)));
  std::vector<Cell> cells;
  for (long i = -nx; i <= nx; ++i)
    for (long j = -ny; j <= ny; ++j) {
      double dx = 2 * delta * i, dy = 2 * delta * j;
      double s = i00 * dx + i01 * dy, t = i10 * dx + i11 * dy;
      if (std::abs(s) <= slack_s && std::abs(t) <= slack_t) cells.push_back({c[0] + dx, c[1] + dy});
    }
  std::sort(cells.begin(), cells.end(), [&](const Cell& a, const Cell& b) {
    double da = (a.y1 - c[0]) * (a.y1 - c[0]) + (a.y2 - c[1]) * (a.y2 - c[1]);
    double db = (b.y1 - c[0]) * (b.y1 - c[0]) + (b.y2 - c[1]) * (b.y2 - c[1]);
    if (da != db) return da < db;
    return std::tie(a.y1, a.y2) < std::tie(b.y1, b.y2);
  });
  return cells;
}

double default_cell_half_side(std::int64_t p) {
  // expected lattice points per cell: 8 pi^2 e^{4 delta} / sqrt|D|, sqrt|D| = 16 p^{3/2}
  double sqrt_disc = 16.0 * std::pow(static_cast<double>(p), 1.5);
  double d = std::log(sqrt_disc / (8.0 * M_PI * M_PI)) / 4.0;
  return std::max(0.25, d);
}

void search_cells(const std::vector<QuartInt>& lattice_basis, const BigInt& norm, const std::vector<Cell>& cells,
                  double delta, const std::function<bool(const QuartInt&, std::size_t)>& visit,
                  const Deadline& deadline, mpfr_prec_t prec) {
  if (norm <= 0) throw PreconditionError("search_cells: norm must be positive");
  double log_n = std::log(norm.get_d());
  double bound = 4.0 * std::exp(2.0 * delta) * (1.0 + 1e-6);
  std::vector<QuartInt> basis = lattice_basis;
  std::array<double, 3> last{0, 0, 0.5 * log_n};
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    deadline.check("cell search");
    const Cell& cell = cells[idx];
    std::array<double, 3> w{cell.y1, cell.y2, 0.5 * (log_n - cell.y1 - cell.y2)};
    // LLL from a basis reduced for distant weights is slow and needs much
    // more precision, so move there in short steps.
    double dist = std::max({std::abs(w[0] - last[0]), std::abs(w[1] - last[1]), std::abs(w[2] - last[2])});
    int steps = static_cast<int>(std::ceil(dist / kMaxWeightStep));
    for (int s = 1; s < steps; ++s) {
      std::array<double, 3> mid;
      for (int i = 0; i < 3; ++i) mid[i] = last[i] + (w[i] - last[i]) * s / steps;
      mpfr_prec_t pr = prec;
      reduce_weighted(basis, mid, pr);
    }
    last = w;
    bool go = enumerate_weighted(
        basis, w, bound,
        [&](const QuartInt& x) {
          if (abs(absolute_norm(x)) != norm) return true;
          return visit(x, idx);
        },
        deadline, prec);
    if (!go) return;
  }
}

}  // namespace qck::quart
