#include <cmath>

#include "qck/quartfield.hpp"

namespace qck::quart {

namespace {

constexpr double kMaxUnitLog = 5000;

struct LogUnit {
  QuartInt u;
  std::array<double, 2> l{};
};

mpfr_prec_t precision_for(const QuartInt& x) {
  std::size_t bits = 0;
  for (const auto& c : x.c) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  return static_cast<mpfr_prec_t>(128 + 2 * bits);
}

std::array<double, 2> logs2(const QuartInt& u) {
  auto L = log_embedding(u, precision_for(u));
  return {L[0].to_double(), L[1].to_double()};
}

LogUnit make(QuartInt u) {
  if (sign(u) < 0) u = -u;
  LogUnit r{u, {}};
  r.l = logs2(u);
  return r;
}

double dot(const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[0] + a[1] * b[1]; }
double det2(const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[1] - a[1] * b[0]; }

QuartInt power(const QuartInt& u, const BigInt& e) {
  if (!arith::fits_int64(e) || abs(e) > 1'000'000) throw ResourceLimit("unit exponent too large: " + e.get_str());
  return pow_signed(u, e.get_si());
}

void gauss_reduce(LogUnit& a, LogUnit& b) {
  for (int it = 0; it < 10000; ++it) {
    if (dot(b.l, b.l) < dot(a.l, a.l)) std::swap(a, b);
    double mu = dot(a.l, b.l) / dot(a.l, a.l);
    if (std::abs(mu) <= 0.5 + 1e-9) return;
    double m = std::round(mu);
    b = make(b.u * pow_signed(a.u, -static_cast<long>(m)));
  }
  throw InternalError("unit lattice reduction did not converge");
}

std::vector<QuartInt> power_basis(std::int64_t p) {
  return {QuartInt::rational(1, p), QuartInt{0, 1, 0, 0, p}, QuartInt{0, 0, 1, 0, p}, QuartInt{0, 0, 0, 1, p}};
}

// Exponent k with n = +-U^k for a unit n of O_F.
long log_base_unit(const QuadInt& n, const QuadInt& U) {
  if (abs(quad::norm_F(n)) != 1) throw InternalError("relative norm of a unit is not a unit");
  mpfr_prec_t prec = 256 + 2 * static_cast<mpfr_prec_t>(mpz_sizeinbase(n.a.get_mpz_t(), 2));
  Real sp = sqrt(Real(static_cast<long>(n.p), prec));
  Real vn = abs(Real(n.a, prec) + Real(n.b, prec) * sp);
  Real vu = Real(U.a, prec) + Real(U.b, prec) * sp;
  long k = (log(vn) / log(vu)).round().get_si();
  QuadInt pk = k >= 0 ? quad::pow(U, static_cast<unsigned>(k)) : quad::pow(U.conj(), static_cast<unsigned>(-k));
  if (!(pk == n || pk == -n)) throw InternalError("relative norm of a unit is not +-U_F^k");
  return k;
}

}  // namespace

UnitBasis unit_group_basis(std::int64_t p, const Deadline& deadline) {
  quad::validate_field_prime(p);
  const QuadInt U = quad::fundamental_unit(p);
  const double delta = default_cell_half_side(p);
  const auto basis = power_basis(p);
  const mpfr_prec_t prec = Real::kDefaultPrecision;
  const BigInt one = 1;

  // Phase 1: U_F plus a unit of relative norm +-1.  Those have
  // log|s1| = -log|s2|, so the cells along that line suffice.
  LogUnit a = make(QuartInt::from_quad(U));
  std::optional<LogUnit> second;
  const long max_step = static_cast<long>(std::ceil(kMaxUnitLog / (2 * delta)));
  std::vector<Cell> diagonal;
  for (long k = 1; k <= max_step; ++k) diagonal.push_back({2 * delta * k, -2 * delta * k});
  search_cells(
      basis, one, diagonal, delta,
      [&](const QuartInt& u, std::size_t) {
        LogUnit c = make(u);
        double scale = std::sqrt(dot(a.l, a.l) * dot(c.l, c.l));
        if (std::abs(det2(a.l, c.l)) > 1e-8 * scale + 1e-12) {
          second = c;
          return false;
        }
        return true;
      },
      deadline, prec);
  if (!second) throw ResourceLimit("unit_group_basis: search bound exhausted for p = " + std::to_string(p));
  LogUnit b = *second;
  gauss_reduce(a, b);

  // Phase 2: every unit with log vector in the fundamental parallelogram of
  // the current lattice must already lie in it; otherwise enlarge and repeat.
  bool certified = false;
  for (int round = 0; round < 64; ++round) {
    double det = det2(a.l, b.l);
    auto cells = cover_parallelogram({0.0, 0.0}, a.l, b.l, delta);
    std::optional<std::array<double, 3>> outside;  // (s, t) of a unit not in the lattice
    std::optional<LogUnit> extra;
    try {
      search_cells(
          basis, one, cells, delta,
          [&](const QuartInt& u, std::size_t) {
            LogUnit c = make(u);
            double s = det2(c.l, b.l) / det, t = det2(a.l, c.l) / det;
            if (std::abs(s - std::round(s)) < 1e-6 && std::abs(t - std::round(t)) < 1e-6) return true;
            extra = c;
            outside = {s, t, 0};
            return false;
          },
          deadline, prec);
    } catch (const DeadlineExceeded&) {
      break;
    }
    if (!extra) {
      certified = true;
      break;
    }
    // d * log(u) = A log(a) + B log(b) with d the index of the old lattice in the new.
    long d = 0;
    double s = (*outside)[0], t = (*outside)[1];
    for (long cand = 2; cand <= 1'000'000; ++cand) {
      double ds = cand * s, dt = cand * t;
      if (std::abs(ds - std::round(ds)) < 1e-6 && std::abs(dt - std::round(dt)) < 1e-6) {
        d = cand;
        break;
      }
    }
    if (d == 0) throw InternalError("unit_group_basis: cannot place new unit relative to lattice");
    BigInt D = d, A = static_cast<long>(std::round(d * s)), Bc = static_cast<long>(std::round(d * t));
    // In coordinates scaled by d: a = (d,0), b = (0,d), u = (A,Bc).  Two gcd
    // steps give the Hermite basis (g1, 0), (*, g) of the enlarged lattice.
    arith::Xgcd x = arith::xgcd(D, Bc);
    QuartInt h2 = power(b.u, x.u) * power(extra->u, x.v);
    BigInt c3 = -(D / x.g) * A;
    arith::Xgcd y = arith::xgcd(D, c3);
    QuartInt h1 = power(a.u, y.u) * power(b.u, y.v * (Bc / x.g)) * power(extra->u, -y.v * (D / x.g));
    a = make(h1);
    b = make(h2);
    gauss_reduce(a, b);
    if (!(std::abs(det2(a.l, b.l)) < std::abs(det) * (1 - 1e-9)))
      throw InternalError("unit_group_basis: lattice did not grow");
  }

  // Paper basis: N_KF(e_i) = +-U^{k_i}; with u k1 + v k2 = 1,
  // mu2 = e1^u e2^v and mu1 = e1^{k2} e2^{-k1}.
  long k1 = log_base_unit(norm_KF(a.u), U), k2 = log_base_unit(norm_KF(b.u), U);
  arith::Xgcd g = arith::xgcd(BigInt(k1), BigInt(k2));
  if (g.g != 1)
    throw InternalError("unit_group_basis: relative norms of units generate U_F^" + g.g.get_str() +
                        ", not U_F");
  LogUnit mu1 = make(power(a.u, BigInt(k2)) * power(b.u, BigInt(-k1)));
  LogUnit mu2 = make(power(a.u, g.u) * power(b.u, g.v));
  if (mu1.l[0] < 0) mu1 = make(unit_inverse(mu1.u));
  double j = std::round(dot(mu1.l, mu2.l) / dot(mu1.l, mu1.l));
  if (j != 0) mu2 = make(mu2.u * pow_signed(mu1.u, -static_cast<long>(j)));

  UnitBasis out;
  out.mu1 = mu1.u;
  out.mu2 = mu2.u;
  QuadInt n1 = norm_KF(mu1.u), n2 = norm_KF(mu2.u);
  if (n1 == QuadInt::rational(1, p)) out.mu1_norm_sign = 1;
  else if (n1 == QuadInt::rational(-1, p)) out.mu1_norm_sign = -1;
  else throw InternalError("unit_group_basis: norm_KF(mu1) is not +-1");
  if (n2 == U) out.mu2_norm_sign = 1;
  else if (n2 == -U) out.mu2_norm_sign = -1;
  else throw InternalError("unit_group_basis: norm_KF(mu2) is not +-U_F");
  out.certified = certified;
  out.regulator = std::abs(det2(mu1.l, mu2.l));
  return out;
}

std::array<std::array<double, 2>, 2> unit_log_matrix(const UnitBasis& b) { return {logs2(b.mu1), logs2(b.mu2)}; }

}  // namespace qck::quart
