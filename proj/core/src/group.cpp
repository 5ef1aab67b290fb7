#include "autoclose/group.hpp"

#include <cstdlib>
#include <string>

#include "autoclose/errors.hpp"

namespace autoclose {

GroupModel GroupModel::finite_table(std::vector<std::vector<std::size_t>> table) {
  const std::size_t n = table.size();
  if (n == 0) throw ParseError("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw ParseError("group table is not square");
    for (auto x : row) {
      if (x >= n) throw ParseError("group table entry out of range");
    }
  }
  GroupModel g(Kind::finite_table, 0, n);
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) {
      g.identity_ = e;
      found = true;
    }
  }
  if (!found) throw ParseError("group table has no identity");
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t z = 0; z < n; ++z) {
        if (table[table[x][y]][z] != table[x][table[y][z]]) throw ParseError("group table is not associative");
      }
    }
  }
  g.inverse_.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (table[x][y] == g.identity_ && table[y][x] == g.identity_) g.inverse_[x] = y;
    }
    if (g.inverse_[x] == n) throw ParseError("group table element " + std::to_string(x) + " has no inverse");
  }
  g.table_ = std::move(table);
  return g;
}

GroupModel GroupModel::cyclic(std::size_t n) {
  if (n == 0) throw ParseError("cyclic group order must be positive");
  return GroupModel(Kind::cyclic, 1, n);
}

GroupModel GroupModel::free(std::size_t rank) { return GroupModel(Kind::free, rank, 0); }

GroupModel GroupModel::free_abelian(std::size_t rank) { return GroupModel(Kind::free_abelian, rank, 0); }

Element GroupModel::identity() const {
  switch (kind_) {
    case Kind::finite_table: return {static_cast<std::int64_t>(identity_)};
    case Kind::cyclic: return {0};
    case Kind::free: return {};
    case Kind::free_abelian: return Element(rank_, 0);
  }
  return {};
}

Element GroupModel::multiply(const Element& x, const Element& y) const {
  switch (kind_) {
    case Kind::finite_table: return {static_cast<std::int64_t>(table_[x[0]][y[0]])};
    case Kind::cyclic: return {(x[0] + y[0]) % static_cast<std::int64_t>(order_)};
    case Kind::free_abelian: {
      Element out(rank_);
      for (std::size_t k = 0; k < rank_; ++k) out[k] = x[k] + y[k];
      return out;
    }
    case Kind::free: {
      Element out = x;
      for (auto letter : y) {
        if (!out.empty() && out.back() == -letter) {
          out.pop_back();
        } else {
          out.push_back(letter);
        }
      }
      return out;
    }
  }
  return {};
}

Element GroupModel::inverse(const Element& x) const {
  switch (kind_) {
    case Kind::finite_table: return {static_cast<std::int64_t>(inverse_[x[0]])};
    case Kind::cyclic: return {(static_cast<std::int64_t>(order_) - x[0]) % static_cast<std::int64_t>(order_)};
    case Kind::free_abelian: {
      Element out(rank_);
      for (std::size_t k = 0; k < rank_; ++k) out[k] = -x[k];
      return out;
    }
    case Kind::free: {
      Element out(x.rbegin(), x.rend());
      for (auto& letter : out) letter = -letter;
      return out;
    }
  }
  return {};
}

Element GroupModel::letter(std::size_t k) const {
  if (k >= alphabet_size()) throw ParseError("letter index out of range");
  const std::size_t gen = k / 2;
  const bool inv = k % 2 == 1;
  switch (kind_) {
    case Kind::cyclic: return {inv ? static_cast<std::int64_t>(order_ - 1) % static_cast<std::int64_t>(order_) : 1 % static_cast<std::int64_t>(order_)};
    case Kind::free: return {inv ? -static_cast<std::int64_t>(gen + 1) : static_cast<std::int64_t>(gen + 1)};
    case Kind::free_abelian: {
      Element out(rank_, 0);
      out[gen] = inv ? -1 : 1;
      return out;
    }
    case Kind::finite_table: break;
  }
  return identity();
}

namespace {

std::string generator_name(std::size_t gen) {
  if (gen < 26) return std::string(1, static_cast<char>('a' + gen));
  return "x" + std::to_string(gen + 1);
}

std::string power(const std::string& base, std::int64_t e) {
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace

std::string GroupModel::format(const Element& x) const {
  switch (kind_) {
    case Kind::finite_table: return "g" + std::to_string(x[0]);
    case Kind::cyclic: return x[0] == 0 ? "e" : power("g", x[0]);
    case Kind::free_abelian: {
      std::string out;
      for (std::size_t k = 0; k < rank_; ++k) {
        if (x[k] != 0) out += power(generator_name(k), x[k]);
      }
      return out.empty() ? "e" : out;
    }
    case Kind::free: {
      std::string out;
      std::size_t k = 0;
      while (k < x.size()) {
        std::size_t run = k;
        while (run < x.size() && x[run] == x[k]) ++run;
        auto len = static_cast<std::int64_t>(run - k);
        out += power(generator_name(static_cast<std::size_t>(std::abs(x[k]) - 1)), x[k] > 0 ? len : -len);
        k = run;
      }
      return out.empty() ? "e" : out;
    }
  }
  return "?";
}

std::string GroupModel::describe() const {
  switch (kind_) {
    case Kind::finite_table: return "finite group of order " + std::to_string(order_);
    case Kind::cyclic: return "cyclic(" + std::to_string(order_) + ")";
    case Kind::free: return "free(" + std::to_string(rank_) + ")";
    case Kind::free_abelian: return "free_abelian(" + std::to_string(rank_) + ")";
  }
  return "group";
}

std::vector<Element> ball_enumerate(const GroupModel& group, std::size_t radius) {
  Balls balls(group);
  return balls.ball(radius);
}

void Balls::grow(std::size_t radius) const {
  if (sizes_.empty()) {
    if (group_.is_finite()) {
      for (std::size_t k = 0; k < group_.order(); ++k) {
        Element x{static_cast<std::int64_t>(k)};
        index_.emplace(x, k);
        elements_.push_back(std::move(x));
      }
    } else {
      Element e = group_.identity();
      index_.emplace(e, 0);
      elements_.push_back(std::move(e));
    }
    sizes_.push_back(elements_.size());
  }
  if (group_.is_finite()) {
    while (sizes_.size() <= radius) sizes_.push_back(elements_.size());
    return;
  }
  while (sizes_.size() <= radius) {
    const std::size_t begin = sizes_.size() >= 2 ? sizes_[sizes_.size() - 2] : 0;
    const std::size_t end = sizes_.back();
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t l = 0; l < group_.alphabet_size(); ++l) {
        Element y = group_.multiply(elements_[k], group_.letter(l));
        if (index_.emplace(y, elements_.size()).second) elements_.push_back(std::move(y));
      }
    }
    sizes_.push_back(elements_.size());
  }
}

std::vector<Element> Balls::ball(std::size_t radius) const {
  std::lock_guard lock(mutex_);
  grow(radius);
  return {elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(sizes_[radius])};
}

std::size_t Balls::size(std::size_t radius) const {
  std::lock_guard lock(mutex_);
  grow(radius);
  return sizes_[radius];
}

const Element& Balls::element(std::size_t k) const {
  std::lock_guard lock(mutex_);
  if (k >= elements_.size()) throw ParseError("element index " + std::to_string(k) + " has not been enumerated");
  return elements_[k];
}

std::size_t Balls::index_of(const Element& x, std::size_t radius) const {
  std::lock_guard lock(mutex_);
  grow(radius);
  auto it = index_.find(x);
  if (it == index_.end() || it->second >= sizes_[radius]) return npos;
  return it->second;
}

}  // namespace autoclose
