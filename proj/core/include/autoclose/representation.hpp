#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "autoclose/group.hpp"
#include "autoclose/matrix.hpp"
#include "autoclose/subspace.hpp"

namespace autoclose {

/// A finite-dimensional linear representation g -> pi^g of a GroupModel.
///
/// Word groups are given by one invertible matrix per generator; finite
/// tables by one matrix per element. Construction checks the defining
/// relations (g^n = 1 for cyclic groups, commuting generators for
/// free_abelian, the multiplication table for finite_table).
class Representation {
 public:
  Representation(GroupModel group, Field field, Index dim, std::vector<Matrix> matrices);

  static Representation trivial(GroupModel group, Field field, Index dim);

  const GroupModel& group() const { return group_; }
  Field field() const { return field_; }
  Index dim() const { return dim_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }

  /// pi^g; the identity at e.
  const Matrix& act(const Element& g) const;

 private:
  Matrix evaluate(const Element& g) const;

  GroupModel group_;
  Field field_;
  Index dim_;
  std::vector<Matrix> matrices_;
  std::vector<Matrix> inverses_;
  struct Cache {
    std::mutex mutex;
    std::map<Element, Matrix> acts;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// {v : pi^g v = v for every generator}, or every element of a finite table.
Subspace fixed_subspace(const Representation& rep);

}  // namespace autoclose
