#include "fixtures.hpp"

#include <algorithm>
#include <numeric>

#include "autoclose/linalg.hpp"

namespace fixtures {

using namespace autoclose;

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Matrix power(const Matrix& a, long k) {
  Matrix base = k < 0 ? *inverse(a) : a;
  Matrix out = Matrix::identity(a.field(), a.rows());
  for (long t = 0; t < std::abs(k); ++t) out = out * base;
  return out;
}

Scalar nonzero_scalar(Rng& rng, Field f) {
  while (true) {
    Scalar s = random_scalar(rng, f);
    if (!s.is_zero()) return s;
  }
}

}  // namespace

Field field_for(std::size_t k) {
  static const Field fields[] = {Field::rational(), Field::prime(2), Field::prime(3),
                                 Field::prime(5),  Field::prime(7), Field::prime(101)};
  return fields[k % 6];
}

Scalar random_scalar(Rng& rng, Field f) {
  if (f.is_prime()) {
    return Scalar(f, static_cast<long>(std::uniform_int_distribution<std::uint64_t>(0, f.modulus() - 1)(rng)));
  }
  const long n = std::uniform_int_distribution<long>(-3, 3)(rng);
  if (uniform(rng, 0, 5) == 0) return Scalar(f, mpq_class(n, 2));
  return Scalar(f, n);
}

Vector random_vector(Rng& rng, Field f, Index n) {
  Vector v;
  for (Index k = 0; k < n; ++k) v.push_back(random_scalar(rng, f));
  return v;
}

Matrix random_matrix(Rng& rng, Field f, Index rows, Index cols, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<Vector> dense(rows, zero_vector(f, cols));
  for (auto& row : dense) {
    for (auto& x : row) {
      if (keep(rng)) x = random_scalar(rng, f);
    }
  }
  return Matrix::from_dense(f, cols, dense);
}

Matrix random_low_rank(Rng& rng, Field f, Index rows, Index cols) {
  const Index k = uniform(rng, 0, std::min(rows, cols));
  if (k == 0) return Matrix(f, rows, cols);
  return random_matrix(rng, f, rows, k, 0.8) * random_matrix(rng, f, k, cols, 0.8);
}

Matrix random_invertible(Rng& rng, Field f, Index n) {
  while (true) {
    Matrix m = random_matrix(rng, f, n, n, 0.8);
    if (rank(m) == n) return m;
  }
}

Matrix random_surjective(Rng& rng, Field f, Index rows, Index cols) {
  while (true) {
    Matrix m = random_matrix(rng, f, rows, cols, 0.8);
    if (rank(m) == rows) return m;
  }
}

BandFixture random_band_fixture(Rng& rng, Field f, Level max_depth, Index max_dim) {
  BandFixture fx;
  fx.field = f;
  fx.depth = uniform(rng, 1, max_depth);
  fx.cutoff = uniform(rng, 1, fx.depth);
  const Level C = fx.cutoff;

  std::vector<Level> reads{uniform(rng, 1, 2)};
  while (reads.size() < C) reads.push_back(reads.back() + uniform(rng, 0, 2));
  const Level S = reads.back();

  std::vector<Index> sdims;
  for (Level i = 1; i <= S; ++i) sdims.push_back(uniform(rng, 1, max_dim));
  std::vector<Matrix> sq;
  for (Level i = 1; i < S; ++i) {
    sq.push_back(uniform(rng, 0, 2) == 0 ? random_low_rank(rng, f, sdims[i - 1], sdims[i])
                                         : random_matrix(rng, f, sdims[i - 1], sdims[i]));
  }
  auto source = function_tower(
      f, [sdims, S](Level i) { return sdims[std::min(i, S) - 1]; },
      [sq, sdims, S, f](Level i) { return i < S ? sq[i - 1] : Matrix::identity(f, sdims[S - 1]); }, "random source",
      S);

  std::vector<Index> tdims{uniform(rng, 1, max_dim)};
  while (tdims.size() < C) tdims.push_back(tdims.back() + uniform(rng, 0, std::min<Index>(2, max_dim - tdims.back())));
  std::vector<Matrix> tr;
  for (Level j = 1; j < C; ++j) tr.push_back(random_surjective(rng, f, tdims[j - 1], tdims[j]));
  auto target = function_tower(
      f, [tdims, C](Level j) { return tdims[std::min(j, C) - 1]; },
      [tr, tdims, C, f](Level j) { return j < C ? tr[j - 1] : Matrix::identity(f, tdims[C - 1]); }, "random target",
      C);

  auto composite = [&](Level a, Level b) {
    Matrix out = Matrix::identity(f, sdims[a - 1]);
    for (Level i = a; i < b; ++i) out = out * sq[i - 1];
    return out;
  };

  std::vector<Matrix> maps{random_low_rank(rng, f, tdims[0], sdims[reads[0] - 1])};
  for (Level j = 1; j < C; ++j) {
    const Matrix& r = tr[j - 1];
    const Matrix rhs = maps.back() * composite(reads[j - 1], reads[j]);
    const Index cols = rhs.cols();
    std::vector<Vector> x(r.cols(), zero_vector(f, cols));
    const auto dense_rhs = rhs.to_dense();
    for (Index c = 0; c < cols; ++c) {
      Vector col;
      for (Index k = 0; k < rhs.rows(); ++k) col.push_back(dense_rhs[k][c]);
      const Vector sol = *solve_particular(r, col);
      for (Index k = 0; k < r.cols(); ++k) x[k][c] = sol[k];
    }
    Matrix next = Matrix::from_dense(f, cols, x);
    const Subspace ker = kernel_basis(r);
    if (ker.dim() > 0) next = next - (ker.basis().transpose() * random_low_rank(rng, f, ker.dim(), cols));
    maps.push_back(next);
  }

  BandMapSpec spec;
  spec.read_level = [reads, C](Level j) { return reads[std::min(j, C) - 1]; };
  spec.coefficients = [maps, C](Level j) { return maps[std::min(j, C) - 1]; };
  spec.stationary_from = C;
  spec.name = "random band";
  fx.map = towermap_from_band(spec, source, target, fx.depth + 4);
  fx.relabeled = reindex_cofinal(fx.map);
  return fx;
}

StabilizationFixture stabilization_fixture(Rng& rng, Field f, Level levels) {
  StabilizationFixture fx;
  fx.field = f;
  const Index m = uniform(rng, 1, 6);
  fx.dim = m;

  // P_i x has coordinate c equal to mu[i][c] * x[sigma[i][c]].
  std::vector<std::vector<Index>> sigma;
  std::vector<std::vector<Scalar>> mu;
  std::vector<Matrix> P;
  for (Level i = 1; i < levels; ++i) {
    std::vector<Index> s(m);
    std::iota(s.begin(), s.end(), 0);
    std::vector<Scalar> sc(m, Scalar::one(f));
    if (uniform(rng, 0, 3) != 0) {
      std::shuffle(s.begin(), s.end(), rng);
      for (auto& x : sc) x = nonzero_scalar(rng, f);
    }
    std::vector<SparseRow> rows;
    for (Index c = 0; c < m; ++c) rows.push_back({{s[c], sc[c]}});
    P.push_back(Matrix::from_rows(f, m, std::move(rows)));
    sigma.push_back(std::move(s));
    mu.push_back(std::move(sc));
  }

  // Phi_j = P_1 ... P_{j-1} : (Phi_j x)_c = lambda[j][c] * x[pi[j][c]].
  std::vector<std::vector<Index>> pi(levels + 1);
  std::vector<std::vector<Scalar>> lambda(levels + 1);
  pi[1].resize(m);
  std::iota(pi[1].begin(), pi[1].end(), 0);
  lambda[1].assign(m, Scalar::one(f));
  for (Level j = 1; j < levels; ++j) {
    pi[j + 1].resize(m);
    lambda[j + 1].resize(m, Scalar::zero(f));
    for (Index c = 0; c < m; ++c) {
      pi[j + 1][c] = sigma[j - 1][pi[j][c]];
      lambda[j + 1][c] = lambda[j][c] * mu[j - 1][pi[j][c]];
    }
  }

  // Kill a random set of coordinates at random levels, ordered by level.
  std::vector<Index> coords(m);
  std::iota(coords.begin(), coords.end(), 0);
  std::shuffle(coords.begin(), coords.end(), rng);
  coords.resize(uniform(rng, 0, m));
  std::vector<std::pair<Level, Index>> kills;
  for (Index c : coords) kills.push_back({uniform(rng, 1, levels > 3 ? levels - 3 : 1), c});
  std::sort(kills.begin(), kills.end());
  fx.deepest_kill = kills.empty() ? 0 : kills.back().first;

  auto source = function_tower(
      f, [m](Level) { return m; }, [P, levels, f, m](Level i) { return i < levels ? P[i - 1] : Matrix::identity(f, m); },
      "monomial source", levels);
  auto killed_by = [kills](Level j) {
    Index n = 0;
    for (const auto& k : kills) n += k.first <= j ? 1 : 0;
    return n;
  };
  auto target = coordinate_tower(f, killed_by, "kill target", std::max<Level>(fx.deepest_kill, 1));

  BandMapSpec spec;
  spec.read_level = [](Level j) { return j; };
  spec.coefficients = [kills, pi, lambda, levels, f, m](Level j) {
    const Level jj = std::min(j, levels);
    std::vector<SparseRow> rows;
    for (const auto& [at, c] : kills) {
      if (at <= j) rows.push_back({{pi[jj][c], lambda[jj][c]}});
    }
    return Matrix::from_rows(f, m, std::move(rows));
  };
  spec.stationary_from = std::max<Level>(levels, fx.deepest_kill);
  spec.name = "kill map";
  fx.relabeled = reindex_cofinal(towermap_from_band(spec, source, target, levels + 2));

  for (Level i = 1; i <= levels; ++i) {
    fx.expected_ell.push_back(std::max(i, fx.deepest_kill));
    std::vector<Vector> gens;
    for (Index c = 0; c < m; ++c) {
      if (std::find(coords.begin(), coords.end(), c) != coords.end()) continue;
      Vector e = zero_vector(f, m);
      e[pi[i][c]] = Scalar::one(f);
      gens.push_back(std::move(e));
    }
    fx.expected_image.push_back(Subspace::span(f, m, gens));
  }
  return fx;
}

Representation random_representation(Rng& rng, const GroupModel& group, Field f, Index dim) {
  std::vector<Matrix> gens;
  switch (group.kind()) {
    case GroupModel::Kind::free:
      for (std::size_t k = 0; k < group.generator_count(); ++k) gens.push_back(random_invertible(rng, f, dim));
      break;
    case GroupModel::Kind::free_abelian: {
      const Matrix a = random_invertible(rng, f, dim);
      gens.push_back(a);
      for (std::size_t k = 1; k < group.generator_count(); ++k) {
        const long e = static_cast<long>(uniform(rng, 0, 3)) - 1;
        std::vector<Vector> scale(dim, zero_vector(f, dim));
        const Scalar c = nonzero_scalar(rng, f);
        for (Index d = 0; d < dim; ++d) scale[d][d] = c;
        gens.push_back(power(a, e) * Matrix::from_dense(f, dim, scale));
      }
      break;
    }
    case GroupModel::Kind::cyclic: {
      const std::size_t n = group.order();
      std::vector<SparseRow> rows(dim);
      Index at = 0;
      while (at < dim) {
        std::vector<Index> lengths;
        for (Index l = 1; l <= dim - at; ++l) {
          if (n % l == 0) lengths.push_back(l);
        }
        const Index l = lengths[uniform(rng, 0, lengths.size() - 1)];
        Scalar sign = Scalar::one(f);
        if (l == 1 && n % 2 == 0 && uniform(rng, 0, 1) == 1) sign = -sign;
        for (Index k = 0; k < l; ++k) rows[at + k] = {{at + (k + 1) % l, sign}};
        at += l;
      }
      const Matrix perm = Matrix::from_rows(f, dim, std::move(rows));
      const Matrix s = random_invertible(rng, f, dim);
      gens.push_back(s * perm * *inverse(s));
      break;
    }
    case GroupModel::Kind::finite_table:
      return Representation::trivial(group, f, dim);
  }
  return Representation(group, f, dim, std::move(gens));
}

CochainPrefix random_cochain(Rng& rng, const BarComplex& complex, std::size_t degree, Level radius) {
  return CochainPrefix{degree, radius, random_vector(rng, complex.field(), complex.cochain_dim(degree, radius))};
}

}  // namespace fixtures
