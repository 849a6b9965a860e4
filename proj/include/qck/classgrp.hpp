#pragma once

// Class groups of O_K by relation collection over a factor base.
//
// The base S holds the prime ideals of norm <= small_bound.  Every other prime
// up to the Minkowski bound is shown to lie in the subgroup generated by S
// (descent), so Z^S / (relations found) maps onto Cl_K.  The map is shown to
// be injective by testing that every element of prime order in the computed
// group is non-principal.  Both steps passing makes the result certified.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qck/ideals.hpp"

namespace qck::classgrp {

using ideals::Ideal;
using ideals::PrimeIdealFactor;
using quart::QuartInt;

struct FactorBase {
  std::int64_t p = 0;
  BigInt bound;
  std::vector<PrimeIdealFactor> primes;  // sorted by norm, then HNF
  // primes of norm > bound lying over a rational prime that has some prime in the base
  std::vector<PrimeIdealFactor> outside;
  std::vector<unsigned long> rational_primes;  // below primes or outside, ascending

  std::size_t size() const { return primes.size(); }
};

// All prime ideals of norm <= bound.
FactorBase build_factor_base(std::int64_t p, const BigInt& bound);

// Exponents of <x> over the base, or absent if <x> has a prime factor
// outside it.  x nonzero.
std::optional<std::vector<long>> factor_over(const FactorBase& fb, const QuartInt& x);

// Exponents of <x> Q^{-1} over the base, when x lies in Q exactly once and
// no other prime above Q's rational prime divides <x>.
std::optional<std::vector<long>> factor_over_cofactor(const FactorBase& fb, const QuartInt& x,
                                                      const PrimeIdealFactor& Q);

struct Relation {
  QuartInt x;
  std::vector<long> exponents;  // <x> = prod P_i^{e_i}
};

// One batch of relations: for every base prime P a few elements of P P'
// (P' a random base prime) whose ideals factor over the base.  Deterministic
// in (seed, batch), whatever the thread count.
std::vector<Relation> collect_relations(const FactorBase& fb, std::uint64_t seed, std::size_t batch,
                                        unsigned threads, const Deadline& deadline);

// Shows that each prime of norm in (fb.bound, bound] is a base product times
// a principal ideal.  Returns the primes for which no such element was found.
struct DescentResult {
  std::size_t descended = 0;
  std::vector<PrimeIdealFactor> failed;
};
DescentResult descend(const FactorBase& fb, const BigInt& bound, std::uint64_t seed, unsigned threads,
                      const Deadline& deadline);

// ---------------------------------------------------------------------------
// Ideal reduction.

struct Reduction {
  Ideal ideal;  // b with a b = <x>, so [b] = [a]^{-1}
  QuartInt x;   // short element of a
};
Reduction reduce(const Ideal& a);
// An ideal of small norm in the class of a.
Ideal reduce_in_class(const Ideal& a);
// Small representative of the class of prod P_i^{e_i} (e_i may be negative).
Ideal class_representative(const FactorBase& fb, const std::vector<BigInt>& exponents);

// Exhaustive class enumeration: breadth-first over products of the base
// primes, classes told apart by find_generator.  Throws ResourceLimit when
// more than max_classes classes appear.
std::size_t exhaustive_class_count(const FactorBase& fb, std::size_t max_classes,
                                   const Deadline& deadline = Deadline::never());

// ---------------------------------------------------------------------------

enum class Certification { certified, heuristic };
std::string to_string(Certification c);

struct ClassGroupConfig {
  std::uint64_t seed = 1;
  Deadline deadline = Deadline::never();
  unsigned threads = 0;            // 0: hardware concurrency
  BigInt small_bound = 0;          // 0: automatic
  std::size_t extra_relations = 20;
  int stable_batches = 2;          // identical h over this many batches before testing
  std::size_t max_relations = 100000;
  BigInt exhaustive_bound = 500;   // exhaustive cross-check when the Minkowski bound is at most this
};

struct ClassGroupStructure {
  std::int64_t p = 0;
  BigInt h;
  std::vector<BigInt> elementary_divisors;  // d_1 | d_2 | ..., all > 1
  std::vector<Ideal> generators;            // one per divisor
  Certification certification = Certification::heuristic;

  BigInt minkowski_bound, small_bound;
  std::size_t base_size = 0, relations = 0, descended = 0;
  bool descent_complete = false;  // S generates Cl_K
  bool kernel_trivial = false;    // no element of prime order is principal
  std::optional<std::size_t> exhaustive_count;
  std::vector<std::string> notes;
};

ClassGroupStructure compute_class_group(std::int64_t p, const ClassGroupConfig& config = {});

// 2-parts of the elementary divisors (those > 1).
std::vector<BigInt> two_sylow(const ClassGroupStructure& s);
std::string group_to_string(const std::vector<BigInt>& divisors);  // "Z/2 x Z/6", "1"

// ---------------------------------------------------------------------------
// Tables.

struct TableRow {
  std::int64_t p = 0;
  std::optional<BigInt> h;
  std::vector<BigInt> divisors;
  std::string certification;
  double wall_seconds = 0;
  bool from_cache = false;
  std::string error;  // set when the row failed
};

// One row per prime; failures are recorded and the run continues.  With a
// cache path every finished row is appended as a JSON line
// {p, h, divisors, seed, certification, timestamp}; with resume, primes
// already cached for this seed are not recomputed.
std::vector<TableRow> tabulate(const std::vector<std::int64_t>& primes, const ClassGroupConfig& config,
                               const std::string& cache_path = "", bool resume = false);

}  // namespace qck::classgrp
