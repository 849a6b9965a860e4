#pragma once

// Decision procedures on elements and ideals of K = Q(p^(1/4)): the 2-adic
// ramification classifier for K(sqrt(alpha)), norm normalization, the audit
// of square ideals, the odd-norm principality oracle, witness primes and the
// Hilbert class field check.

#include <optional>
#include <string>
#include <vector>

#include "qck/ideals.hpp"
#include "qck/quartfield.hpp"

namespace qck::criteria {

using ideals::Ideal;
using quart::QuartInt;
using quad::QuadInt;

// ---------------------------------------------------------------------------
// Ramification at 2.

enum class Condition { unit_case, case2, case3, case4, none };
std::string to_string(Condition c);

struct Evidence {
  std::string quantity;  // e.g. "N(alpha)", "a1"
  BigInt value;          // residue of the quantity
  BigInt modulus;
};

struct RamificationVerdict {
  Condition condition = Condition::none;
  QuartInt alpha;             // after the sqrt(p) preprocessing, if applied
  bool preprocessed = false;  // alpha was multiplied by sqrt(p)
  bool paper_literal = false; // case 4 is applied exactly as stated
  BigInt norm;
  std::vector<Evidence> evidence;
};

// Which condition holds for alpha; `none` means 2 ramifies completely in
// K(sqrt(alpha)).  The unit case accepts alpha = U_F times a square of a unit.
// PreconditionError when alpha is zero or a square in K.
RamificationVerdict classify_ramification_at_2(const QuartInt& alpha);

// The same tests without the square check, so that the congruence clauses can
// be inspected on any nonzero alpha.
RamificationVerdict evaluate_conditions(const QuartInt& alpha);

// ---------------------------------------------------------------------------
// Square norms.

struct NormalizedAlpha {
  QuartInt beta;  // <beta> = <alpha'>, alpha' = alpha or alpha mu1^2
  QuadInt B;      // norm_KF(beta) = B^2
  bool premultiplied = false;  // alpha was in O_F and got multiplied by mu1^2
  bool divided_by_mu2 = false;
};

// beta in {alpha, alpha/mu2} with a square relative norm.  InternalError if
// neither works.
NormalizedAlpha normalize_to_square_norm(const QuartInt& alpha);

// ---------------------------------------------------------------------------
// Audit of <alpha> = I^2 with norm_KF(alpha) = B^2.

struct AuditItem {
  std::string item;  // "1", "2", ..., "C^2 sqrt(p)"
  bool passed = false;
  std::string detail;
};

struct AuditReport {
  bool hypotheses_hold = false;
  std::vector<std::string> hypothesis_failures;
  Condition condition = Condition::none;
  std::optional<Ideal> I;  // square root of <alpha>
  std::vector<AuditItem> items;

  bool passed() const;  // hypotheses hold and every item passed
};

// Hypotheses: alpha in O_K - O_F, norm_KF(alpha) = B^2, <alpha> a square, and
// alpha in case 2, 3 or 4 of the classifier.  Hypothesis failures are listed
// and the items are then skipped.
AuditReport audit_square_ideal_generator(const QuartInt& alpha, const QuadInt& B,
                                         const Deadline& deadline = Deadline::never());

// ---------------------------------------------------------------------------
// Primes with odd valuation in <alpha> ramify in K(sqrt(alpha)).

struct OddValuationPrime {
  ideals::PrimeIdealFactor prime;
  int valuation = 0;       // in <alpha>
  int disc_valuation = 0;  // in <4 alpha>, the discriminant of x^2 - alpha
  bool ramified = false;   // disc_valuation odd, so P divides d(L/K)
};

struct OddValuationReport {
  std::vector<OddValuationPrime> primes;
  bool alpha_ideal_square = false;  // no prime with odd valuation
};

// PreconditionError for alpha = 0.
OddValuationReport audit_odd_valuation_ramification(const QuartInt& alpha);

// ---------------------------------------------------------------------------
// Odd-norm ideals.

struct ParityVerdict {
  BigInt ideal_norm;
  int residue_mod_8 = 0;
  bool order_odd = false;
  std::optional<bool> principal;  // set only when h_K = 2 was supplied
};

// PreconditionError for even norm.  `class_number` should come from a
// class group computation; principal is decided only when it equals 2.
ParityVerdict class_order_parity_oracle(const Ideal& a, std::optional<BigInt> class_number = std::nullopt);

struct WitnessPrime {
  BigInt q;
  BigInt nonresidue;  // a = q mod p with (a/p) = -1
  BigInt residue_class;  // q mod 8p from the CRT of (3 mod 8, a mod p)
  BigInt modulus;        // 8p
};

// Smallest prime q = 3 (mod 8) with (q/p) = -1.  The scan terminates by
// Dirichlet's theorem; no explicit bound is enforced.
WitnessPrime construct_witness_prime(std::int64_t p);

// ---------------------------------------------------------------------------
// Hilbert class field.

struct HilbertReport {
  bool precondition = false;  // h_K = 2
  bool two_is_L2_squared_UF = false;
  bool uf_unit_case = false;
  bool uf_ideal_trivial = false;
  bool two_not_square = false;
  bool verified() const {
    return precondition && two_is_L2_squared_UF && uf_unit_case && uf_ideal_trivial && two_not_square;
  }
  std::string verdict;
};

HilbertReport hilbert_class_field_check(std::int64_t p, const BigInt& class_number);

}  // namespace qck::criteria
