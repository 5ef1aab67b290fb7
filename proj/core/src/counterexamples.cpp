#include "autoclose/counterexamples.hpp"

#include <algorithm>
#include <cstdlib>

#include "autoclose/errors.hpp"
#include "autoclose/tower_map.hpp"

namespace autoclose {

IntBandSystem IntBandSystem::periodic(const std::vector<long>& pattern, std::size_t depth) {
  if (pattern.empty()) throw ParseError("q pattern is empty");
  IntBandSystem sys;
  for (std::size_t k = 0; k < depth; ++k) sys.q.emplace_back(pattern[k % pattern.size()]);
  return sys;
}

IntBandWitness example1_per_level_solvable(const IntBandSystem& sys, Level i) {
  if (i == 0 || i > sys.depth()) throw DimensionMismatch("level must lie in 1..depth");
  IntBandWitness out;
  out.p.assign(i + 1, 0);
  for (Level k = i; k >= 1; --k) out.p[k - 1] = sys.q[k - 1] + 2 * out.p[k];
  out.solvable = true;
  out.verified = true;
  for (Level k = 1; k <= i; ++k) out.verified = out.verified && out.p[k - 1] - 2 * out.p[k] == sys.q[k - 1];
  return out;
}

mpz_class example1_min_norm(const IntBandSystem& sys, Level i) {
  if (i == 0 || i > sys.depth()) throw DimensionMismatch("level must lie in 1..depth");
  mpz_class modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), 2, i);
  mpz_class s = 0;
  mpz_class weight = 1;
  for (Level k = 1; k <= i; ++k) {
    s += weight * sys.q[k - 1];
    weight *= 2;
  }
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), s.get_mpz_t(), modulus.get_mpz_t());
  mpz_class other = modulus - r;
  return r < other ? r : other;
}

SolveResult example1_over_field(const IntBandSystem& sys, Level depth, Field field, const ClosureOptions& options) {
  if (field.kind() == Field::Kind::integer) throw UnsupportedField("example1_over_field needs a field");
  TowerMap map = reindex_cofinal(example1_map(field));
  std::vector<Vector> w;
  Vector level;
  for (const auto& qk : sys.q) {
    level.push_back(Scalar(field, qk));
    w.push_back(level);
  }
  return construct_preimage(map, w, depth, options);
}

namespace {

mpz_class isqrt_scaled(unsigned long radicand, unsigned bits) {
  mpz_class x = radicand;
  x <<= 2 * bits;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

mpq_class scaled_down(const mpz_class& num, unsigned bits) {
  mpz_class den = 1;
  den <<= bits;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

unsigned example2_default_bits(const DensityProbe& probe) {
  if (probe.precision_bits > 0) return probe.precision_bits;
  // Width of the enclosure is at most (|m| + |n|) / 2^bits <= 2 bound / 2^bits.
  mpq_class need = mpq_class(2 * std::max(probe.bound, 1L)) * 100 / probe.eps;
  unsigned bits = 32;
  mpz_class scale = mpz_class(1) << bits;
  while (mpq_class(scale) <= need) {
    ++bits;
    scale <<= 1;
  }
  return bits;
}

Enclosure example2_enclose(long m, long n, const DensityProbe& probe, unsigned bits) {
  const mpz_class a = isqrt_scaled(2, bits);  // sqrt2 in [a, a + 1] / 2^bits
  const mpz_class b = isqrt_scaled(3, bits);
  const mpz_class mm = m;
  const mpz_class nn = n;
  mpz_class lo = mm * (m >= 0 ? a : a + 1) + nn * (n >= 0 ? b : b + 1);
  mpz_class hi = mm * (m >= 0 ? a + 1 : a) + nn * (n >= 0 ? b + 1 : b);
  Enclosure out;
  out.bits = bits;
  out.lo = scaled_down(lo, bits) - probe.t;
  out.hi = scaled_down(hi, bits) - probe.t;
  if (-probe.eps < out.lo && out.hi < probe.eps) {
    out.decision = Decision::accept;
  } else if (out.hi <= -probe.eps || out.lo >= probe.eps) {
    out.decision = Decision::reject;
  }
  return out;
}

std::optional<DensityHit> example2_approximate(const DensityProbe& probe) {
  if (probe.eps <= 0) throw ParseError("eps must be positive");
  if (probe.bound < 0) throw ParseError("bound must be non-negative");
  const unsigned bits = example2_default_bits(probe);
  const mpz_class a = isqrt_scaled(2, bits);
  const mpz_class b = isqrt_scaled(3, bits);
  mpz_class scale = 1;
  scale <<= bits;
  // Accept iff (t - eps) 2^bits < lo and hi < (t + eps) 2^bits.
  const mpq_class lower = (probe.t - probe.eps) * scale;
  const mpq_class upper = (probe.t + probe.eps) * scale;

  DensityHit hit;
  mpz_class lo, hi, tmp;
  auto test = [&](long m, long n) -> bool {
    ++hit.scanned;
    lo = m;
    lo *= m >= 0 ? a : a + 1;
    tmp = n;
    tmp *= n >= 0 ? b : b + 1;
    lo += tmp;
    hi = m;
    hi *= m >= 0 ? a + 1 : a;
    tmp = n;
    tmp *= n >= 0 ? b + 1 : b;
    hi += tmp;
    if (cmp(mpq_class(hi), lower) <= 0 || cmp(mpq_class(lo), upper) >= 0) return false;
    Enclosure e = example2_enclose(m, n, probe, bits);
    for (unsigned more = bits * 2; e.decision == Decision::undecided && more <= bits * 64; more *= 2) {
      e = example2_enclose(m, n, probe, more);
    }
    if (e.decision != Decision::accept) return false;
    hit.m = m;
    hit.n = n;
    hit.residual = e;
    return true;
  };

  for (long r = 0; r <= probe.bound; ++r) {
    for (long m = -r; m <= r; ++m) {
      if (std::labs(m) == r) {
        for (long n = -r; n <= r; ++n) {
          if (test(m, n)) return hit;
        }
      } else {
        if (test(m, -r)) return hit;
        if (r > 0 && test(m, r)) return hit;
      }
    }
  }
  return std::nullopt;
}

std::string decimal_string(const mpq_class& x, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = x.get_num() * scale;
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den_mpz_t());
  const bool negative = q < 0 || (q == 0 && x < 0);
  mpz_class mag = abs(q);
  std::string s = mag.get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + s : s;
}

}  // namespace autoclose
