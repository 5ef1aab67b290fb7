#include "autoclose/linalg.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <unordered_map>

#include "accumulator.hpp"
#include "autoclose/errors.hpp"

namespace autoclose {

void require_field(Field field, const char* op) {
  if (!field.is_field()) {
    throw UnsupportedField(std::string(op) + " needs a field; the integer ring is only available to the counterexamples");
  }
}

namespace detail {
namespace {

// x + a * y for sorted sparse rows.
SparseRow axpy(const SparseRow& x, const Scalar& a, const SparseRow& y) {
  SparseRow out;
  out.reserve(x.size() + y.size());
  auto xi = x.begin();
  auto yi = y.begin();
  while (xi != x.end() || yi != y.end()) {
    if (yi == y.end() || (xi != x.end() && xi->col < yi->col)) {
      out.push_back(*xi++);
    } else if (xi == x.end() || yi->col < xi->col) {
      out.push_back({yi->col, a * yi->value});
      ++yi;
    } else {
      Scalar v = xi->value;
      v.add_product(a, yi->value);
      if (!v.is_zero()) out.push_back({xi->col, std::move(v)});
      ++xi;
      ++yi;
    }
  }
  return out;
}

void normalize(SparseRow& row, Scalar* rhs, Index pivot_col) {
  auto it = std::find_if(row.begin(), row.end(), [&](const Entry& e) { return e.col == pivot_col; });
  Scalar inv = it->value.inverse();
  for (auto& e : row) e.value *= inv;
  if (rhs != nullptr) *rhs *= inv;
}

// Incremental elimination with a free pivot order. Pivot rows are kept
// reduced against earlier pivots only; finish() back-substitutes so that every
// pivot row is zero on every other pivot column.
class Reducer {
 public:
  Reducer(Field field, Index cols, std::vector<Index> column_weight)
      : field_(field), cols_(cols), weight_(std::move(column_weight)), acc_(field, cols) {}

  // false when the row reduces to 0 = rhs != 0
  bool add(const SparseRow& row, const Scalar& rhs) {
    Scalar r = rhs;
    for (const auto& e : row) acc_.add(e.col, e.value);
    using Item = std::pair<std::size_t, Index>;  // (pivot row index, column)
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pending;
    for (const auto& e : row) {
      auto it = row_of_pivot_.find(e.col);
      if (it != row_of_pivot_.end()) pending.emplace(it->second, e.col);
    }
    SparseRow x;
    if (pending.empty()) {
      x = acc_.take();
    } else {
      // Pull pending pivots in insertion order; each pivot row only touches
      // pivots of later rows.
      SparseRow current = acc_.take();
      std::size_t last = SIZE_MAX;
      while (!pending.empty()) {
        auto [k, col] = pending.top();
        pending.pop();
        if (k == last) continue;
        last = k;
        auto it = std::lower_bound(current.begin(), current.end(), col, [](const Entry& e, Index c) { return e.col < c; });
        if (it == current.end() || it->col != col) continue;
        Scalar coeff = -it->value;
        r.add_product(coeff, rhs_[k]);
        current = axpy(current, coeff, rows_[k]);
        for (const auto& e : rows_[k]) {
          auto pit = row_of_pivot_.find(e.col);
          if (pit != row_of_pivot_.end() && pit->second > k) pending.emplace(pit->second, e.col);
        }
      }
      x = std::move(current);
    }
    if (x.empty()) return r.is_zero();
    Index pivot = choose_pivot(x);
    normalize(x, &r, pivot);
    row_of_pivot_.emplace(pivot, rows_.size());
    pivots_.push_back(pivot);
    rows_.push_back(std::move(x));
    rhs_.push_back(std::move(r));
    return true;
  }

  void finish() {
    for (std::size_t k = rows_.size(); k-- > 0;) {
      bool touched = false;
      for (const auto& e : rows_[k]) {
        if (e.col != pivots_[k] && row_of_pivot_.count(e.col)) {
          touched = true;
          break;
        }
      }
      if (!touched) continue;
      Scalar r = rhs_[k];
      for (const auto& e : rows_[k]) {
        acc_.add(e.col, e.value);
        if (e.col == pivots_[k]) continue;
        auto it = row_of_pivot_.find(e.col);
        if (it != row_of_pivot_.end()) {
          Scalar coeff = -e.value;
          acc_.add_row(rows_[it->second], coeff);
          r.add_product(coeff, rhs_[it->second]);
        }
      }
      rows_[k] = acc_.take();
      rhs_[k] = std::move(r);
    }
  }

  Index rank() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  const std::vector<Scalar>& rhs() const { return rhs_; }
  bool is_pivot(Index c) const { return row_of_pivot_.count(c) != 0; }

  // After finish(): one kernel vector per free column f, e_f - sum_k P_k[f] e_{pivot_k}.
  std::vector<SparseRow> kernel_rows() const {
    std::vector<std::vector<std::pair<Index, Scalar>>> by_free(cols_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      for (const auto& e : rows_[k]) {
        if (e.col != pivots_[k]) by_free[e.col].emplace_back(pivots_[k], -e.value);
      }
    }
    std::vector<SparseRow> out;
    for (Index f = 0; f < cols_; ++f) {
      if (is_pivot(f)) continue;
      SparseRow v;
      v.reserve(by_free[f].size() + 1);
      for (auto& [c, s] : by_free[f]) v.push_back({c, s});
      v.push_back({f, Scalar::one(field_)});
      std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  Index choose_pivot(const SparseRow& x) const {
    Index best = x.front().col;
    for (const auto& e : x) {
      Index w = weight_.empty() ? 0 : weight_[e.col];
      Index bw = weight_.empty() ? 0 : weight_[best];
      if (w < bw || (w == bw && e.col > best)) best = e.col;
    }
    return best;
  }

  Field field_;
  Index cols_;
  std::vector<Index> weight_;
  Accumulator acc_;
  std::vector<SparseRow> rows_;
  std::vector<Scalar> rhs_;
  std::vector<Index> pivots_;
  std::unordered_map<Index, std::size_t> row_of_pivot_;
};

std::vector<Index> column_counts(const Matrix& m) {
  std::vector<Index> counts(m.cols(), 0);
  for (const auto& row : m.row_data()) {
    for (const auto& e : row) ++counts[e.col];
  }
  return counts;
}

// Feeds rows sparsest first, which keeps fill-in low on banded and coboundary matrices.
std::vector<Index> row_order(const Matrix& m) {
  std::vector<Index> order(m.rows());
  for (Index i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return m.row(a).size() < m.row(b).size(); });
  return order;
}

Reducer reduce_matrix(const Matrix& m, const Vector* rhs, bool* consistent) {
  Reducer red(m.field(), m.cols(), column_counts(m));
  bool ok = true;
  for (Index r : row_order(m)) {
    Scalar b = rhs ? (*rhs)[r] : Scalar(m.field());
    if (!red.add(m.row(r), b)) ok = false;
  }
  red.finish();
  if (consistent) *consistent = ok;
  return red;
}

}  // namespace

Echelon canonical_rref(Field field, Index cols, std::vector<SparseRow> rows) {
  std::unordered_map<Index, std::size_t> lead;
  std::vector<SparseRow> basis;
  for (auto& x : rows) {
    while (!x.empty()) {
      auto it = lead.find(x.front().col);
      if (it == lead.end()) {
        normalize(x, nullptr, x.front().col);
        lead.emplace(x.front().col, basis.size());
        basis.push_back(std::move(x));
        break;
      }
      x = axpy(x, -x.front().value, basis[it->second]);
    }
  }
  std::sort(basis.begin(), basis.end(), [](const SparseRow& a, const SparseRow& b) { return a.front().col < b.front().col; });
  lead.clear();
  for (std::size_t k = 0; k < basis.size(); ++k) lead.emplace(basis[k].front().col, k);

  Accumulator acc(field, cols);
  for (std::size_t k = basis.size(); k-- > 0;) {
    const Index own = basis[k].front().col;
    bool dirty = std::any_of(basis[k].begin() + 1, basis[k].end(), [&](const Entry& e) { return lead.count(e.col) != 0; });
    if (!dirty) continue;
    for (const auto& e : basis[k]) {
      acc.add(e.col, e.value);
      auto it = lead.find(e.col);
      if (e.col != own && it != lead.end()) acc.add_row(basis[it->second], -e.value);
    }
    basis[k] = acc.take();
  }

  Echelon out;
  out.pivots.reserve(basis.size());
  for (const auto& r : basis) out.pivots.push_back(r.front().col);
  out.rows = std::move(basis);
  return out;
}

}  // namespace detail

RrefResult rref(const Matrix& m) {
  require_field(m.field(), "rref");
  auto ech = detail::canonical_rref(m.field(), m.cols(), m.row_data());
  RrefResult out;
  out.rank = ech.rows.size();
  out.pivot_cols = ech.pivots;
  std::vector<SparseRow> rows = std::move(ech.rows);
  rows.resize(m.rows());
  out.canonical = Matrix::from_rows(m.field(), m.cols(), std::move(rows));
  return out;
}

Index rank(const Matrix& m) {
  require_field(m.field(), "rank");
  return detail::reduce_matrix(m, nullptr, nullptr).rank();
}

Subspace kernel_basis(const Matrix& m) {
  require_field(m.field(), "kernel_basis");
  auto red = detail::reduce_matrix(m, nullptr, nullptr);
  return Subspace::span(Matrix::from_rows(m.field(), m.cols(), red.kernel_rows()));
}

std::optional<Vector> solve_particular(const Matrix& a, const Vector& b) {
  require_field(a.field(), "solve_particular");
  if (b.size() != a.rows()) {
    throw DimensionMismatch("right-hand side of length " + std::to_string(b.size()) + " for " + std::to_string(a.rows()) + " equations");
  }
  bool consistent = true;
  auto red = detail::reduce_matrix(a, &b, &consistent);
  if (!consistent) return std::nullopt;

  Vector x = zero_vector(a.field(), a.cols());
  for (std::size_t k = 0; k < red.rank(); ++k) x[red.pivots()[k]] = red.rhs()[k];

  // Move x onto the canonical representative: zero on the free columns of
  // rref(a). Those columns are exactly the trailing pivots of the kernel.
  auto kernel = red.kernel_rows();
  if (kernel.empty()) return x;
  const Index n = a.cols();
  auto mirror = [n](std::vector<SparseRow> rows) {
    for (auto& r : rows) {
      for (auto& e : r) e.col = n - 1 - e.col;
      std::reverse(r.begin(), r.end());
    }
    return rows;
  };
  auto trailing = detail::canonical_rref(a.field(), n, mirror(std::move(kernel)));
  auto reduced = mirror(std::move(trailing.rows));
  for (const auto& row : reduced) {
    const Entry& last = row.back();  // trailing pivot, coefficient 1
    Scalar c = x[last.col];
    if (c.is_zero()) continue;
    Scalar minus = -c;
    for (const auto& e : row) x[e.col].add_product(minus, e.value);
  }
  return x;
}

bool is_solvable(const Matrix& a, const Vector& b) {
  require_field(a.field(), "is_solvable");
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length does not match row count");
  bool consistent = true;
  detail::reduce_matrix(a, &b, &consistent);
  return consistent;
}

std::optional<Matrix> inverse(const Matrix& m) {
  require_field(m.field(), "inverse");
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const Index n = m.rows();
  std::vector<SparseRow> aug;
  aug.reserve(n);
  for (Index r = 0; r < n; ++r) {
    SparseRow row = m.row(r);
    row.push_back({n + r, Scalar::one(m.field())});
    aug.push_back(std::move(row));
  }
  auto ech = detail::canonical_rref(m.field(), 2 * n, std::move(aug));
  if (ech.rows.size() != n || (n > 0 && ech.pivots.back() != n - 1)) return std::nullopt;
  std::vector<SparseRow> inv(n);
  for (Index r = 0; r < n; ++r) {
    for (const auto& e : ech.rows[r]) {
      if (e.col >= n) inv[r].push_back({e.col - n, e.value});
    }
  }
  return Matrix::from_rows(m.field(), n, std::move(inv));
}

}  // namespace autoclose
