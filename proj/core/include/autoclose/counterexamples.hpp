#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "autoclose/closure.hpp"

namespace autoclose {

/// The integer system p_k - 2 p_{k+1} = q_k, k = 1, 2, ...
struct IntBandSystem {
  std::vector<mpz_class> q;  ///< q_1..q_D

  /// q_k = pattern[(k - 1) mod |pattern|] for k = 1..depth.
  static IntBandSystem periodic(const std::vector<long>& pattern, std::size_t depth);
  Level depth() const { return q.size(); }
};

struct IntBandWitness {
  bool solvable = false;
  std::vector<mpz_class> p;  ///< p_1..p_{i+1}
  bool verified = false;     ///< p_k - 2 p_{k+1} = q_k re-checked for k <= i
};

/// Truncation at level i: p_{i+1} = 0 and p_k = q_k + 2 p_{k+1}.
IntBandWitness example1_per_level_solvable(const IntBandSystem& sys, Level i);

/// Least |p_1| over integer solutions of the first i equations: the smallest
/// absolute value in the class q_1 + 2 q_2 + ... + 2^{i-1} q_i + 2^i Z.
mpz_class example1_min_norm(const IntBandSystem& sys, Level i);

/// The same band map over a field, solved through the closure solver on the
/// relabeled map. w_j = (q_1..q_j).
SolveResult example1_over_field(const IntBandSystem& sys, Level depth, Field field = Field::rational(),
                                const ClosureOptions& options = {});

/// Search for m sqrt2 + n sqrt3 within eps of t, |m|, |n| <= bound.
struct DensityProbe {
  mpq_class t;
  mpq_class eps;
  long bound = 1000;
  /// Fixed-point bits for sqrt2 and sqrt3; 0 picks the least value keeping
  /// the enclosure width below eps / 100 for every pair in range.
  unsigned precision_bits = 0;
};

enum class Decision { accept, reject, undecided };

/// Enclosure [lo, hi] of m sqrt2 + n sqrt3 - t from `bits`-bit fixed-point
/// bounds on the square roots, and the decision |value| < eps it certifies.
struct Enclosure {
  mpq_class lo;
  mpq_class hi;
  unsigned bits = 0;
  Decision decision = Decision::undecided;
};

Enclosure example2_enclose(long m, long n, const DensityProbe& probe, unsigned bits);

struct DensityHit {
  long m = 0;
  long n = 0;
  Enclosure residual;  ///< certified accept
  std::size_t scanned = 0;
};

/// Scan in increasing max(|m|, |n|), then lexicographic (m, n); undecided
/// pairs are re-enclosed at doubled precision. nullopt when nothing within
/// the bound qualifies.
std::optional<DensityHit> example2_approximate(const DensityProbe& probe);

/// Bits used when probe.precision_bits is 0.
unsigned example2_default_bits(const DensityProbe& probe);

/// Decimal rendering of a rational with `digits` significant fractional digits.
std::string decimal_string(const mpq_class& x, int digits = 12);

}  // namespace autoclose
