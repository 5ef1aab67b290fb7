#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace autoclose {

/// Group element in normal form.
///
/// finite_table, cyclic: {index}. free_abelian(d): the exponent vector.
/// free(k): the reduced word, generator g as g + 1 and its inverse as -(g + 1).
using Element = std::vector<std::int64_t>;

/// A countable discrete group with solvable word problem.
class GroupModel {
 public:
  enum class Kind { finite_table, cyclic, free, free_abelian };

  /// Validates closure, associativity, identity and inverses.
  static GroupModel finite_table(std::vector<std::vector<std::size_t>> table);
  static GroupModel cyclic(std::size_t n);
  static GroupModel free(std::size_t rank);
  static GroupModel free_abelian(std::size_t rank);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite_table || kind_ == Kind::cyclic; }
  /// |G| for finite groups, 0 otherwise.
  std::size_t order() const { return order_; }
  /// Generators of the word alphabet: rank for free groups, 1 for cyclic, 0 for tables.
  std::size_t generator_count() const { return rank_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  Element identity() const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const;
  /// Letter k of the alphabet a < a^-1 < b < b^-1 < ...
  Element letter(std::size_t k) const;
  std::size_t alphabet_size() const { return 2 * rank_; }
  std::string format(const Element& x) const;
  std::string describe() const;

 private:
  GroupModel(Kind kind, std::size_t rank, std::size_t order) : kind_(kind), rank_(rank), order_(order) {}

  Kind kind_;
  std::size_t rank_;
  std::size_t order_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

/// Word-length ball B_n in breadth-first order by right multiplication with
/// the alphabet letters, identity first; B_n is a prefix of B_{n+1}. Finite
/// groups give every element in table order.
std::vector<Element> ball_enumerate(const GroupModel& group, std::size_t radius);

/// Cached balls with element lookup.
class Balls {
 public:
  explicit Balls(GroupModel group) : group_(std::move(group)) {}

  const GroupModel& group() const { return group_; }
  /// B_n (all of G when G is finite).
  std::vector<Element> ball(std::size_t radius) const;
  std::size_t size(std::size_t radius) const;
  /// Element k of the enumeration; the reference stays valid.
  const Element& element(std::size_t k) const;
  /// Position of x in the enumeration, or npos when x lies outside B_radius.
  std::size_t index_of(const Element& x, std::size_t radius) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  void grow(std::size_t radius) const;

  GroupModel group_;
  mutable std::mutex mutex_;
  mutable std::deque<Element> elements_;
  mutable std::vector<std::size_t> sizes_;  // sizes_[n] = |B_n|
  mutable std::map<Element, std::size_t> index_;
};

}  // namespace autoclose
