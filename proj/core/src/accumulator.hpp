#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "autoclose/matrix.hpp"

namespace autoclose::detail {

// Scatter/gather buffer for sparse linear combinations. Dense storage below
// kDenseLimit columns, an ordered map above it.
class Accumulator {
 public:
  static constexpr Index kDenseLimit = Index{1} << 16U;

  Accumulator(Field field, Index cols) : field_(field), dense_(cols <= kDenseLimit) {
    if (dense_) {
      values_.assign(cols, Scalar(field));
      touched_flag_.assign(cols, 0);
    }
  }

  void add(Index col, const Scalar& coeff, const Scalar& value) {
    if (dense_) {
      if (!touched_flag_[col]) {
        touched_flag_[col] = 1;
        touched_.push_back(col);
      }
      values_[col].add_product(coeff, value);
    } else {
      auto [it, inserted] = sparse_.try_emplace(col, field_);
      it->second.add_product(coeff, value);
    }
  }

  void add(Index col, const Scalar& value) {
    if (dense_) {
      if (!touched_flag_[col]) {
        touched_flag_[col] = 1;
        touched_.push_back(col);
      }
      values_[col] += value;
    } else {
      auto [it, inserted] = sparse_.try_emplace(col, field_);
      it->second += value;
    }
  }

  void add_row(const SparseRow& row, const Scalar& coeff) {
    for (const auto& e : row) add(e.col, coeff, e.value);
  }

  // Returns the accumulated row and resets the buffer.
  SparseRow take() {
    SparseRow out;
    if (dense_) {
      std::sort(touched_.begin(), touched_.end());
      out.reserve(touched_.size());
      for (Index c : touched_) {
        if (!values_[c].is_zero()) out.push_back({c, values_[c]});
        values_[c] = Scalar(field_);
        touched_flag_[c] = 0;
      }
      touched_.clear();
    } else {
      for (auto& [c, v] : sparse_) {
        if (!v.is_zero()) out.push_back({c, v});
      }
      sparse_.clear();
    }
    return out;
  }

 private:
  Field field_;
  bool dense_;
  std::vector<Scalar> values_;
  std::vector<char> touched_flag_;
  std::vector<Index> touched_;
  std::map<Index, Scalar> sparse_;
};

}  // namespace autoclose::detail
