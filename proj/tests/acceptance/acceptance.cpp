// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "autoclose/closure.hpp"
#include "autoclose/cohomology.hpp"
#include "autoclose/counterexamples.hpp"
#include "autoclose/linalg.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace autoclose;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

double to_double(const mpq_class& q) { return q.get_d(); }

// 1 ---------------------------------------------------------------------------
void example1_obstruction(Verdict& v) {
  const auto sys = IntBandSystem::periodic({1, 0}, 30);
  const auto t0 = Clock::now();
  std::vector<mpz_class> a{0};
  for (Level i = 1; i <= 30; ++i) a.push_back(example1_min_norm(sys, i));
  const double elapsed = seconds_since(t0);

  const long expected[] = {1, 1, 3, 5, 11, 21, 43, 85};
  for (Level i = 1; i <= 8; ++i) v.require(a[i] == expected[i - 1], "a_" + std::to_string(i) + " = " + a[i].get_str());
  std::vector<long> q;
  for (int k = 0; k < 30; ++k) q.push_back(k % 2 == 0 ? 1 : 0);
  for (Level i = 1; i <= 18; ++i) {
    v.require(a[i] == *oracle::brute_min_norm(q, i, 1L << 19), "brute force disagrees at i = " + std::to_string(i));
  }
  for (Level i = 3; i <= 20; ++i) v.require(a[i] == a[i - 1] + 2 * a[i - 2], "recurrence at i = " + std::to_string(i));
  double lo = 1e9, hi = 0;
  for (Level i = 10; i <= 30; ++i) {
    mpz_class pow2 = mpz_class(1) << static_cast<unsigned>(i);
    const double ratio = to_double(mpq_class(3 * a[i], pow2));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  v.require(lo >= 0.95 && hi <= 1.05, "ratio outside [0.95, 1.05]");
  v.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  v.detail << "a_1..a_8 = 1 1 3 5 11 21 43 85, a_30 = " << a[30].get_str() << ", ratio in [" << lo << ", " << hi
           << "] for i = 10..30, " << secs(elapsed);
}

// 2 ---------------------------------------------------------------------------
void field_ring_dichotomy(Verdict& v) {
  const auto t0 = Clock::now();
  const auto sys = IntBandSystem::periodic({1, 0}, 100);
  const SolveResult result = example1_over_field(sys, 100, Field::rational());
  const auto* cert = std::get_if<PreimageCertificate>(&result);
  v.require(cert != nullptr, "no certificate over Q");
  if (cert) {
    v.require(cert->depth() == 100 && cert->verified(), "certificate does not self-verify");
    // Direct check of (v_k - 2 v_{k+1}) = q_k and of the projections, from the band formula.
    for (Level i = 1; i <= 100; ++i) {
      const Vector& x = cert->v[i - 1];
      v.require(x.size() == i + 1, "level size");
      for (Level k = 0; k < i; ++k) {
        v.require(x[k] - Scalar(Field::rational(), 2L) * x[k + 1] == Scalar(Field::rational(), sys.q[k]),
                  "T_" + std::to_string(i) + " equation " + std::to_string(k + 1));
      }
      if (i > 1) v.require(Vector(x.begin(), x.end() - 1) == cert->v[i - 2], "q-consistency at " + std::to_string(i));
    }
  }
  mpz_class previous = 0;
  bool diverging = true;
  for (Level i = 1; i <= 30; ++i) {
    const auto w = example1_per_level_solvable(sys, i);
    v.require(w.solvable && w.verified, "integer level " + std::to_string(i) + " unsolvable");
    for (Level k = 0; k < i && w.solvable; ++k) v.require(w.p[k] - 2 * w.p[k + 1] == sys.q[k], "integer witness");
    const mpz_class a = example1_min_norm(sys, i);
    if (i >= 3) diverging = diverging && a > previous;
    previous = a;
  }
  v.require(diverging && previous > 100000000, "min-norm does not diverge");
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 5.0, "runtime " + std::to_string(elapsed) + " s");
  v.detail << "depth-100 certificate over Q verified; Z levels 1..30 solvable with min|p_1| increasing to "
           << previous.get_str() << ", " << secs(elapsed);
}

// 3 ---------------------------------------------------------------------------
void closure_property_suite(Verdict& v) {
  const auto t0 = Clock::now();
  fixtures::Rng rng(20240601);
  std::size_t images = 0, rejected = 0, accepted = 0, failures = 0;
  for (std::size_t k = 0; k < 1000; ++k) {
    const Field f = fixtures::field_for(k);
    auto fx = fixtures::random_band_fixture(rng, f, 12, 6);
    const TowerMap& m = fx.relabeled;
    const Level L = fx.depth + 3;

    // w := T(v) for a random v.
    const Vector x = fixtures::random_vector(rng, f, m.source()->dim(L));
    std::vector<Vector> w;
    for (Level j = 1; j <= L; ++j) w.push_back(oracle::apply(m.level_map(j), oracle::apply(m.source()->connect(j, L), x)));
    const SolveResult r = construct_preimage(m, w, fx.depth);
    const auto* cert = std::get_if<PreimageCertificate>(&r);
    bool ok = cert && cert->verified() && cert->depth() == fx.depth;
    for (Level i = 1; ok && i <= fx.depth; ++i) ok = oracle::apply(m.level_map(i), cert->v[i - 1]) == w[i - 1];
    ++images;
    if (!ok) {
      ++failures;
      v.require(false, "image target " + std::to_string(k));
    }

    // A random consistent target, compared against the rank oracle.
    const auto y = consistent_prefix_from(*m.target(), L, fixtures::random_vector(rng, f, m.target()->dim(L)));
    const auto expected = oracle::first_unsolvable(m, y);
    const SolveResult s = construct_preimage(m, y, fx.depth);
    if (expected) {
      ++rejected;
      const auto* fail = std::get_if<SolveFailure>(&s);
      const bool match = fail && fail->kind == FailureKind::not_in_level_image && fail->level == *expected;
      if (!match) ++failures;
      v.require(match, "failing level mismatch on fixture " + std::to_string(k));
    } else {
      ++accepted;
      const auto* c = std::get_if<PreimageCertificate>(&s);
      const bool good = c && c->verified();
      if (!good) ++failures;
      v.require(good, "per-level solvable target rejected on fixture " + std::to_string(k));
    }
  }
  const double elapsed = seconds_since(t0);
  v.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
  v.detail << images << " image targets solved, " << rejected << " non-image targets rejected at the oracle level, "
           << accepted << " random targets in the image, " << failures << " failures, " << secs(elapsed);
}

// 4 ---------------------------------------------------------------------------
void stabilization_correctness(Verdict& v) {
  fixtures::Rng rng(777);
  std::size_t checked = 0, nontrivial = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    const Field f = fixtures::field_for(k);
    const Level levels = 8 + k % 5;
    auto fx = fixtures::stabilization_fixture(rng, f, levels);
    if (fx.deepest_kill > 1) ++nontrivial;
    const Level depth = levels + 3;
    for (Level i = 1; i <= levels; ++i) {
      const auto rec = stabilization_index(fx.relabeled, i, depth);
      v.require(rec.stabilized, "fixture " + std::to_string(k) + " level " + std::to_string(i) + " not stabilized");
      v.require(rec.ell == fx.expected_ell[i - 1], "fixture " + std::to_string(k) + " ell(" + std::to_string(i) +
                                                       ") = " + std::to_string(rec.ell) + ", expected " +
                                                       std::to_string(fx.expected_ell[i - 1]));
      v.require(rec.kernel_image == fx.expected_image[i - 1], "fixture " + std::to_string(k) + " image at " + std::to_string(i));
      v.require(kernel_level_image(fx.relabeled, i, depth).subspace == fx.expected_image[i - 1], "kernel_level_image");
      ++checked;
    }
  }
  v.detail << checked << " (fixture, level) pairs over 50 fixtures, " << nontrivial << " with a kill after level 1";
}

// 5 ---------------------------------------------------------------------------
void cochain_identity(Verdict& v) {
  const auto t0 = Clock::now();
  fixtures::Rng rng(5150);
  std::vector<GroupModel> groups{GroupModel::free_abelian(1), GroupModel::free_abelian(2), GroupModel::free(2)};
  for (std::size_t n = 2; n <= 6; ++n) groups.push_back(GroupModel::cyclic(n));
  std::size_t reps = 0, tuples = 0, square_checks = 0, idx = 0;
  for (const auto& g : groups) {
    for (Field f : {Field::rational(), Field::prime(2), Field::prime(3)}) {
      const Index dim = 1 + idx++ % 3;
      const BarComplex c(fixtures::random_representation(rng, g, f, dim));
      ++reps;
      for (std::size_t p = 1; p <= 3; ++p) {
        const Level r = g.is_finite() ? 1 : 2;
        const auto fc = fixtures::random_cochain(rng, c, p - 1, c.read_level(r));
        const auto z = c.apply_coboundary(fc, r);
        const auto report = c.cocycle_defect(z);
        tuples += report.checked;
        v.require(report.is_cocycle() && !report.block_too_small(),
                  g.describe() + " over " + f.name() + ": d_" + std::to_string(p + 1) + " d_" + std::to_string(p) + " != 0");
        // Spot checks against the formula evaluated directly.
        const auto sample = oracle::tuples(c.balls(), 1, p + 1);
        for (std::size_t t = 0; t < sample.size(); t += 1 + sample.size() / 40) {
          v.require(is_zero(oracle::coboundary_at(c.representation(), c.balls(), z, sample[t])), "oracle d(d f) != 0");
        }
        const auto zt = oracle::tuples(c.balls(), r, p);
        for (std::size_t t = 0; t < zt.size(); t += 1 + zt.size() / 40) {
          const Vector got(z.values.begin() + static_cast<long>(t * dim), z.values.begin() + static_cast<long>((t + 1) * dim));
          v.require(got == oracle::coboundary_at(c.representation(), c.balls(), fc, zt[t]), "d f differs from the formula");
        }
        v.require(!verify_squares(c.coboundary(p), 4).has_value(), g.describe() + ": coboundary square fails");
        ++square_checks;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  v.detail << reps << " representations, " << tuples << " tuples with d d = 0, " << square_checks
           << " coboundary maps with commuting squares to depth 4, " << secs(elapsed);
}

// 6 ---------------------------------------------------------------------------
void finite_dimensions(Verdict& v) {
  const auto t0 = Clock::now();
  auto dims = [](std::size_t n, Field f, std::size_t p) {
    return finite_cohomology_dims(BarComplex(Representation::trivial(GroupModel::cyclic(n), f, 1)), p);
  };
  const auto q1 = dims(2, Field::rational(), 1);
  const auto f21 = dims(2, Field::prime(2), 1);
  const auto f22 = dims(2, Field::prime(2), 2);
  const auto f31 = dims(3, Field::prime(3), 1);
  const double elapsed = seconds_since(t0);
  v.require(q1.cohomology == 0, "H^1(C_2, Q)");
  v.require(f21.cohomology == 1, "H^1(C_2, F_2)");
  v.require(f22.cohomology == 1, "H^2(C_2, F_2)");
  v.require(f31.cohomology == 1, "H^1(C_3, F_3)");

  // Brute force: rank of the directly assembled coboundary over Q, exhaustive
  // enumeration over F_p.
  {
    const Representation rep = Representation::trivial(GroupModel::cyclic(2), Field::rational(), 1);
    Balls balls(rep.group());
    const Matrix d2 = oracle::finite_coboundary(rep, balls, 2), d1 = oracle::finite_coboundary(rep, balls, 1);
    v.require(q1.cocycles == d2.cols() - oracle::rank(d2) && q1.coboundaries == oracle::rank(d1), "Q oracle");
  }
  auto check = [&](std::size_t n, std::uint64_t p, std::size_t degree, const CohomologyDims& d) {
    const Representation rep = Representation::trivial(GroupModel::cyclic(n), Field::prime(p), 1);
    const auto counts = oracle::enumerate_finite(rep, Balls(rep.group()), degree);
    v.require(d.cocycles == oracle::log_exact(counts.cocycles, p) && d.coboundaries == oracle::log_exact(counts.coboundaries, p),
              "enumeration oracle for C_" + std::to_string(n));
  };
  check(2, 2, 1, f21);
  check(2, 2, 2, f22);
  check(3, 3, 1, f31);
  v.require(elapsed < 10.0, "runtime");
  v.detail << "H^1(C_2,Q) = " << q1.cohomology << ", H^1(C_2,F_2) = " << f21.cohomology << ", H^2(C_2,F_2) = " << f22.cohomology
           << ", H^1(C_3,F_3) = " << f31.cohomology << ", " << secs(elapsed);
}

// 7 ---------------------------------------------------------------------------
void coboundary_round_trip(Verdict& v) {
  const auto t0 = Clock::now();
  fixtures::Rng rng(9001);
  struct Case {
    GroupModel group;
    Field field;
    Index dim;
    std::size_t degree;
    Level depth;
    int count;
  };
  const Field Q = Field::rational(), F3 = Field::prime(3);
  const std::vector<Case> cases{
      {GroupModel::free_abelian(1), Q, 1, 1, 4, 13}, {GroupModel::free_abelian(1), Q, 2, 1, 4, 13},
      {GroupModel::free_abelian(1), Q, 1, 2, 3, 13}, {GroupModel::free_abelian(1), Q, 2, 2, 3, 13},
      {GroupModel::free(2), Q, 1, 1, 3, 12},         {GroupModel::free(2), Q, 2, 1, 3, 12},
      {GroupModel::free(2), F3, 1, 2, 2, 12},        {GroupModel::free(2), F3, 2, 2, 2, 12},
  };
  int solved = 0, total = 0;
  for (const auto& cs : cases) {
    const BarComplex c(fixtures::random_representation(rng, cs.group, cs.field, cs.dim));
    const auto table = stabilization_table(c.relabeled_coboundary(cs.degree), cs.depth);
    const Level R = table.back().ell;
    for (int k = 0; k < cs.count; ++k) {
      ++total;
      const auto f = fixtures::random_cochain(rng, c, cs.degree - 1, c.read_level(R));
      const auto z = c.apply_coboundary(f, R);
      const auto sol = solve_coboundary(c, z, cs.depth);
      const auto* cert = std::get_if<PreimageCertificate>(&sol.result);
      if (!cert || !sol.preimage) {
        v.require(false, cs.group.describe() + " degree " + std::to_string(cs.degree) + ": " +
                             std::get<SolveFailure>(sol.result).message);
        continue;
      }
      bool ok = cert->verified();
      const auto all = oracle::tuples(c.balls(), cs.depth, cs.degree);
      for (std::size_t t = 0; ok && t < all.size(); ++t) {
        const Vector want(z.values.begin() + static_cast<long>(t * cs.dim), z.values.begin() + static_cast<long>((t + 1) * cs.dim));
        ok = oracle::coboundary_at(c.representation(), c.balls(), *sol.preimage, all[t]) == want;
      }
      v.require(ok, "d f' != z on " + cs.group.describe());
      solved += ok ? 1 : 0;
    }
  }
  // z(a^n) = n under the trivial action is a cocycle but not a coboundary.
  const BarComplex triv(Representation::trivial(GroupModel::free_abelian(1), Q, 1));
  CochainPrefix z{1, 3, {}};
  for (const auto& g : triv.balls().ball(3)) z.values.push_back(Scalar(Q, static_cast<long>(g[0])));
  const auto sol = solve_coboundary(triv, z, 2);
  const auto* fail = std::get_if<SolveFailure>(&sol.result);
  v.require(fail && fail->kind == FailureKind::not_in_level_image && fail->level >= 1, "z(a) = 1 was not rejected");
  const double elapsed = seconds_since(t0);
  v.detail << solved << "/" << total << " random coboundaries recovered with d f' = z checked by the formula; z(a) = 1 rejected";
  if (fail) v.detail << " at level " << fail->level;
  v.detail << ", " << secs(elapsed);
}

// 8 ---------------------------------------------------------------------------
void density_demo(Verdict& v) {
  const auto t0 = Clock::now();
  DensityProbe probe{mpq_class(1, 2), mpq_class(1, 1000), 1000};
  const auto hit = example2_approximate(probe);
  v.require(hit.has_value(), "no pair within the bound");
  if (!hit) return;
  const Enclosure& e = hit->residual;
  v.require(e.decision == Decision::accept && e.hi < probe.eps && e.lo > -probe.eps, "residual not certified");
  const Enclosure doubled = example2_enclose(hit->m, hit->n, probe, 2 * e.bits);
  v.require(doubled.decision == Decision::accept, "decision flips at doubled precision");
  v.require(doubled.lo >= e.lo && doubled.hi <= e.hi, "doubled enclosure is not nested");
  const auto [s2lo, s2hi] = oracle::sqrt_bracket(2, mpq_class(1, 1000000000));
  const auto [s3lo, s3hi] = oracle::sqrt_bracket(3, mpq_class(1, 1000000000));
  const mpq_class mid = hit->m * (s2lo + s2hi) / 2 + hit->n * (s3lo + s3hi) / 2 - probe.t;
  v.require(abs(mid) < probe.eps, "bisection oracle disagrees");
  const double elapsed = seconds_since(t0);
  v.detail << "(m, n) = (" << hit->m << ", " << hit->n << "), residual in [" << decimal_string(e.lo, 9) << ", "
           << decimal_string(e.hi, 9) << "] at " << e.bits << " bits, stable at " << doubled.bits << " bits, "
           << hit->scanned << " pairs scanned, " << secs(elapsed);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"Example 1 obstruction", example1_obstruction},
      {"field/ring dichotomy", field_ring_dichotomy},
      {"automatic-closure property suite", closure_property_suite},
      {"stabilization correctness", stabilization_correctness},
      {"cochain complex identity", cochain_identity},
      {"finite-group dimensions", finite_dimensions},
      {"coboundary round trip", coboundary_round_trip},
      {"density demo", density_demo},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      criteria[k].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << k + 1 << ": " << criteria[k].first << " - " << v.detail.str()
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
