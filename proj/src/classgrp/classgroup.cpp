#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "qck/classgrp.hpp"
#include "qck/intmat.hpp"

namespace qck::classgrp {

using arith::IntMatrix;
using arith::IntRow;

std::string to_string(Certification c) { return c == Certification::certified ? "certified" : "heuristic"; }

std::vector<BigInt> two_sylow(const ClassGroupStructure& s) {
  std::vector<BigInt> out;
  for (const auto& d : s.elementary_divisors) {
    BigInt t = 1, m = d;
    while (m % 2 == 0) {
      m /= 2;
      t *= 2;
    }
    if (t > 1) out.push_back(t);
  }
  return out;
}

std::string group_to_string(const std::vector<BigInt>& divisors) {
  if (divisors.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < divisors.size(); ++i) os << (i ? " x " : "") << "Z/" << divisors[i];
  return os.str();
}

namespace {

BigInt default_small_bound(const BigInt& mb) { return std::min(mb, BigInt(400)); }

// gcd of determinants of a few maximal independent row sets; 0 if rank < n.
BigInt initial_modulus(const std::vector<IntRow>& rows, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  BigInt g = 0;
  for (int k = 0; k < 3; ++k) {
    if (k) std::shuffle(order.begin(), order.end(), rng);
    auto idx = arith::independent_rows(rows, n, order);
    if (idx.size() < n) return 0;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[idx[i]][j];
    BigInt d = abs(arith::determinant(m));
    if (d == 0) continue;
    g = gcd(g, d);
    if (g == 1) break;
  }
  return g;
}

// The group Z^n / (row lattice of H) as Z/d_1 x ... with generators given
// as exponent vectors over the base.
struct Decomposition {
  std::vector<BigInt> divisors;
  std::vector<std::vector<BigInt>> generators;
};

Decomposition decompose(const IntMatrix& H, const BigInt& order) {
  const std::size_t n = H.rows();
  std::vector<std::size_t> ess;
  std::vector<long> pos(n, -1);
  for (std::size_t j = 0; j < n; ++j)
    if (H(j, j) > 1) {
      pos[j] = static_cast<long>(ess.size());
      ess.push_back(j);
    }
  const std::size_t m = ess.size();
  Decomposition d;
  if (m == 0) return d;

  // e_j in terms of the essential generators, right to left
  std::vector<std::vector<BigInt>> expr(n, std::vector<BigInt>(m, 0));
  for (std::size_t jj = n; jj-- > 0;) {
    if (pos[jj] >= 0) {
      expr[jj][pos[jj]] = 1;
      continue;
    }
    for (std::size_t k = jj + 1; k < n; ++k) {
      if (H(jj, k) == 0) continue;
      for (std::size_t t = 0; t < m; ++t) expr[jj][t] -= H(jj, k) * expr[k][t];
    }
    for (auto& v : expr[jj]) v = arith::mod(v, order);
  }

  IntMatrix R(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t j = ess[a];
    std::vector<BigInt> row(m, 0);
    row[a] = H(j, j);
    for (std::size_t k = j + 1; k < n; ++k) {
      if (H(j, k) == 0) continue;
      for (std::size_t t = 0; t < m; ++t) row[t] += H(j, k) * expr[k][t];
    }
    for (std::size_t t = 0; t < m; ++t) R(a, t) = t == a ? row[t] : arith::mod(row[t], order);
  }

  auto S = arith::smith(R);
  const BigInt exponent = S.diagonal.back();
  for (std::size_t i = 0; i < m; ++i) {
    if (S.diagonal[i] == 1) continue;
    std::vector<BigInt> g(n, 0);
    for (std::size_t t = 0; t < m; ++t) g[ess[t]] = arith::mod(S.V_inv(i, t), exponent);
    d.divisors.push_back(S.diagonal[i]);
    d.generators.push_back(std::move(g));
  }
  return d;
}

std::vector<BigInt> prime_divisors(BigInt n) {
  std::vector<BigInt> out;
  for (BigInt q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  if (n > 1) out.push_back(n);
  return out;
}

// Some element of prime order in the decomposed group that is principal, if any.
std::optional<std::string> principal_element_of_prime_order(const FactorBase& fb, const Decomposition& dec,
                                                            const quart::UnitBasis& units, const Deadline& deadline) {
  if (dec.divisors.empty()) return std::nullopt;
  const BigInt exponent = dec.divisors.back();
  const std::size_t n = fb.size();
  for (const BigInt& ell : prime_divisors(exponent)) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < dec.divisors.size(); ++i)
      if (dec.divisors[i] % ell == 0) idx.push_back(i);
    const unsigned long l = ell.get_ui();
    const std::size_t k = idx.size();
    // projective points of (Z/ell)^k: first nonzero coordinate 1
    std::vector<unsigned long> c(k, 0);
    for (std::size_t lead = 0; lead < k; ++lead) {
      std::fill(c.begin(), c.end(), 0);
      c[lead] = 1;
      for (;;) {
        deadline.check("kernel test");
        std::vector<BigInt> e(n, 0);
        for (std::size_t t = 0; t < k; ++t) {
          if (!c[t]) continue;
          const std::size_t i = idx[t];
          BigInt s = BigInt(c[t]) * (dec.divisors[i] / ell);
          for (std::size_t j = 0; j < n; ++j) e[j] += s * dec.generators[i][j];
        }
        for (auto& v : e) v = arith::mod(v, exponent);
        Ideal rep = class_representative(fb, e);
        if (auto g = ideals::find_generator(rep, units, deadline)) {
          std::ostringstream os;
          os << "element of order " << ell << " is principal, generated by " << quart::to_string(*g);
          return os.str();
        }
        std::size_t t = lead + 1;
        while (t < k && c[t] == l - 1) c[t++] = 0;
        if (t >= k) break;
        ++c[t];
      }
    }
  }
  return std::nullopt;
}

}  // namespace

ClassGroupStructure compute_class_group(std::int64_t p, const ClassGroupConfig& cfg) {
  const auto field = quart::Field::get(p);
  const auto& deadline = cfg.deadline;
  const auto units = field->units(deadline);

  ClassGroupStructure s;
  s.p = p;
  s.minkowski_bound = field->minkowski_bound();
  s.small_bound = cfg.small_bound > 0 ? std::min(cfg.small_bound, s.minkowski_bound)
                                      : default_small_bound(s.minkowski_bound);
  const FactorBase fb = build_factor_base(p, s.small_bound);
  const std::size_t n = fb.size();
  s.base_size = n;

  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<IntRow> rows;
  BigInt modulus = 0, h = 0;
  IntMatrix H;
  Decomposition dec;
  int stable = 0;
  bool descent_done = false;

  if (n == 0) {
    h = 1;
  } else {
    for (std::size_t batch = 0;; ++batch) {
      deadline.check("class group");
      for (auto& r : collect_relations(fb, cfg.seed, batch, cfg.threads, deadline))
        rows.emplace_back(r.exponents.begin(), r.exponents.end());
      if (rows.size() < n + cfg.extra_relations && rows.size() < cfg.max_relations) continue;
      if (modulus == 0) {
        modulus = initial_modulus(rows, n, rng);
        if (modulus == 0) {
          if (rows.size() >= cfg.max_relations) throw ResourceLimit("class group: relations do not reach full rank");
          continue;
        }
      }
      H = arith::hnf_mod(rows, n, modulus);
      BigInt hn = 1;
      for (std::size_t j = 0; j < n; ++j) hn *= H(j, j);
      stable = hn == h ? stable + 1 : 0;
      h = hn;
      modulus = h;
      const bool out_of_budget = rows.size() >= cfg.max_relations;
      if (stable + 1 < cfg.stable_batches && !out_of_budget) continue;

      dec = decompose(H, h);
      if (!descent_done) {
        auto d = descend(fb, s.minkowski_bound, cfg.seed, cfg.threads, deadline);
        s.descended = d.descended;
        s.descent_complete = d.failed.empty();
        for (const auto& P : d.failed)
          s.notes.push_back("descent failed for " + ideals::to_string(P.ideal) + " of norm " + P.norm().get_str());
        descent_done = true;
      }
      auto bad = principal_element_of_prime_order(fb, dec, units, deadline);
      if (!bad) {
        s.kernel_trivial = true;
        break;
      }
      if (out_of_budget) {
        s.notes.push_back("relation budget exhausted: " + *bad);
        break;
      }
      stable = 0;
    }
  }
  if (n == 0) {
    s.descent_complete = s.minkowski_bound < 2;
    s.kernel_trivial = true;
  }

  s.h = h;
  s.relations = rows.size();
  s.elementary_divisors = dec.divisors;
  for (const auto& g : dec.generators) s.generators.push_back(class_representative(fb, g));

  if (s.minkowski_bound <= cfg.exhaustive_bound) {
    const FactorBase full = build_factor_base(p, s.minkowski_bound);
    const std::size_t cap = h.fits_ulong_p() ? h.get_ui() * 2 + 8 : 1u << 20;
    try {
      s.exhaustive_count = exhaustive_class_count(full, cap, deadline);
    } catch (const DeadlineExceeded&) {
      throw;
    } catch (const ResourceLimit& e) {
      s.notes.push_back(std::string("exhaustive count: ") + e.what());
    }
    if (s.exhaustive_count && BigInt(*s.exhaustive_count) != h)
      s.notes.push_back("exhaustive count " + std::to_string(*s.exhaustive_count) + " disagrees with h = " + h.get_str());
  }
  const bool by_relations = s.descent_complete && s.kernel_trivial;
  const bool by_count = s.exhaustive_count && BigInt(*s.exhaustive_count) == h;
  const bool contradicted = s.exhaustive_count && BigInt(*s.exhaustive_count) != h;
  s.certification = (by_relations || by_count) && !contradicted ? Certification::certified : Certification::heuristic;
  return s;
}

}  // namespace qck::classgrp
