#include <atomic>
#include <exception>
#include <random>
#include <thread>

#include "qck/classgrp.hpp"

namespace qck::classgrp {

namespace {

constexpr std::size_t kChunks = 16;
constexpr int kTriesPerIdeal = 80;
constexpr int kRelationsPerIdeal = 2;
constexpr int kDescentAttempts = 24;
constexpr int kDescentTries = 60;

// Runs f(0..count-1) on a pool; the first exception by chunk index is rethrown.
template <class F>
void run_chunks(std::size_t count, unsigned threads, F&& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c; (c = next++) < count;) {
      try {
        f(c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq s{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                  static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(s);
}

std::array<double, 3> random_weights(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double w1 = u(rng), w2 = u(rng);
  return {w1, w2, -(w1 + w2) / 2};
}

QuartInt random_combination(const std::vector<QuartInt>& basis, std::mt19937_64& rng) {
  for (;;) {
    QuartInt x = QuartInt::rational(0, basis.front().p);
    for (const auto& b : basis) {
      long c = static_cast<long>(rng() % 5) - 2;
      if (c) x = x + b * BigInt(c);
    }
    if (!x.is_zero()) return x;
  }
}

}  // namespace

std::vector<Relation> collect_relations(const FactorBase& fb, std::uint64_t seed, std::size_t batch, unsigned threads,
                                        const Deadline& deadline) {
  const std::size_t n = fb.size();
  if (n == 0) return {};
  std::vector<std::vector<Relation>> out(kChunks);
  run_chunks(kChunks, threads, [&](std::size_t c) {
    auto rng = stream(seed, batch, c);
    for (std::size_t i = c; i < n; i += kChunks) {
      deadline.check("relation collection");
      Ideal a = fb.primes[i].ideal * fb.primes[rng() % n].ideal;
      auto basis = quart::reduce_lattice_basis(a.basis(), random_weights(rng));
      int got = 0;
      for (int t = 0; t < kTriesPerIdeal && got < kRelationsPerIdeal; ++t) {
        QuartInt x = random_combination(basis, rng);
        auto e = factor_over(fb, x);
        if (!e || std::all_of(e->begin(), e->end(), [](long v) { return v == 0; })) continue;
        out[c].push_back({x, std::move(*e)});
        ++got;
      }
    }
  });
  std::vector<Relation> all;
  for (auto& v : out)
    for (auto& r : v) all.push_back(std::move(r));
  return all;
}

DescentResult descend(const FactorBase& fb, const BigInt& bound, std::uint64_t seed, unsigned threads,
                      const Deadline& deadline) {
  DescentResult res;
  if (bound <= fb.bound) return res;
  const std::int64_t p = fb.p;
  const auto qs = arith::primes_up_to(bound.get_si());
  std::vector<DescentResult> parts(kChunks);
  run_chunks(kChunks, threads, [&](std::size_t c) {
    auto rng = stream(seed, 0xde5cull, c);
    auto try_prime = [&](const PrimeIdealFactor& Q) {
      for (int a = 0; a < kDescentAttempts; ++a) {
        deadline.check("descent");
        Ideal A = Q.ideal;
        if (a >= 4 && fb.size() > 0) A = A * fb.primes[rng() % fb.size()].ideal;
        auto basis = quart::reduce_lattice_basis(A.basis(), random_weights(rng));
        for (int t = 0; t < kDescentTries; ++t)
          if (factor_over_cofactor(fb, random_combination(basis, rng), Q)) return true;
      }
      return false;
    };
    for (std::size_t k = c; k < qs.size(); k += kChunks) {
      const BigInt q = qs[k];
      std::vector<PrimeIdealFactor> targets;
      if (q <= fb.bound) {
        for (const auto& P : fb.outside)
          if (P.q == q && P.norm() <= bound) targets.push_back(P);
      } else {
        for (auto& P : ideals::dedekind_factor_rational_prime(q, p))
          if (P.norm() <= bound) targets.push_back(std::move(P));
      }
      for (const auto& Q : targets) {
        if (try_prime(Q)) ++parts[c].descended;
        else parts[c].failed.push_back(Q);
      }
    }
  });
  for (auto& r : parts) {
    res.descended += r.descended;
    for (auto& f : r.failed) res.failed.push_back(std::move(f));
  }
  return res;
}

}  // namespace qck::classgrp
