#include <cmath>
#include <numeric>
#include <set>
#include <tuple>

#include "qck/error.hpp"
#include "qck/quadfield.hpp"

namespace qck::quad {

namespace {

using Form = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

// floor(sqrt(D)) for nonsquare D; sqrt(D) itself is irrational so all
// comparisons against it below are strict and decided by integer squares.
std::int64_t isqrt64(std::int64_t D) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(D)));
  while (r * r > D) --r;
  while ((r + 1) * (r + 1) <= D) ++r;
  return r;
}

// x < sqrt(D) for integer x
bool lt_sqrt(std::int64_t x, std::int64_t D) { return x < 0 || x * x < D; }
// x > sqrt(D)
bool gt_sqrt(std::int64_t x, std::int64_t D) { return x > 0 && x * x > D; }

bool is_reduced(std::int64_t a, std::int64_t b, std::int64_t D) {
  // 0 < b < sqrt D  and  sqrt D - b < 2|a| < sqrt D + b
  std::int64_t two_a = 2 * std::abs(a);
  return b > 0 && lt_sqrt(b, D) && gt_sqrt(two_a + b, D) && lt_sqrt(two_a - b, D);
}

Form rho(const Form& f, std::int64_t D, std::int64_t s) {
  auto [a, b, c] = f;
  // b' = -b mod 2|c|, placed in (sqrt D - 2|c|, sqrt D)
  std::int64_t m = 2 * std::abs(c);
  std::int64_t bp = ((-b) % m + m) % m;
  // largest representative below sqrt D: bp + k m <= s
  bp += ((s - bp) / m) * m;
  if (bp > s) bp -= m;
  std::int64_t ap = (bp * bp - D) / (4 * c);
  return {c, bp, ap};
}

}  // namespace

std::int64_t reduced_form_cycles(std::int64_t D) {
  if (D <= 0 || D > 4 * kClassNumberBound) throw PreconditionError("reduced_form_cycles: discriminant out of range");
  const std::int64_t s = isqrt64(D);
  if (s * s == D) throw PreconditionError("reduced_form_cycles: square discriminant");
  std::set<Form> forms;
  for (std::int64_t b = (D % 2 == 0 ? 2 : 1); b <= s; b += 2) {
    std::int64_t m = (D - b * b);
    if (m % 4 != 0) continue;
    m /= 4;  // -ac = m > 0
    for (std::int64_t a = 1; a * a <= m; ++a) {
      if (m % a != 0) continue;
      for (std::int64_t aa : {a, m / a}) {
        for (std::int64_t sg : {1, -1}) {
          std::int64_t A = sg * aa, C = -m / A;
          if (!is_reduced(A, b, D)) continue;
          if (std::gcd(std::gcd(A, b), C) != 1) continue;
          forms.insert({A, b, C});
        }
        if (aa == m / aa) break;
      }
    }
  }
  std::set<Form> seen;
  std::int64_t cycles = 0;
  for (const auto& f : forms) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    do {
      seen.insert(g);
      g = rho(g, D, s);
      if (!forms.count(g)) throw InternalError("reduced_form_cycles: rho left the reduced set");
    } while (g != f);
  }
  return cycles;
}

BigInt class_number_real_quadratic(std::int64_t p) {
  validate_field_prime(p);
  if (p > kClassNumberBound)
    throw ResourceLimit("class_number_real_quadratic: p exceeds bound " + std::to_string(kClassNumberBound));
  // Norm of U_F is +1, so every narrow class pairs with its negative.
  std::int64_t narrow = reduced_form_cycles(4 * p);
  if (narrow % 2 != 0) throw InternalError("class_number_real_quadratic: odd narrow class count");
  return narrow / 2;
}

}  // namespace qck::quad
