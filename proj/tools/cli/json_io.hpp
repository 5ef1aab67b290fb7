#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "autoclose/matrix.hpp"

namespace autoclose::cli {

using nlohmann::json;

/// Thrown for schema problems; `path` is a JSON pointer into the document.
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, std::string message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)), message_(std::move(message)) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// Cursor into a JSON document that remembers its pointer path.
class Node {
 public:
  Node(const json& value, std::string path) : value_(&value), path_(std::move(path)) {}

  const json& value() const { return *value_; }
  const std::string& path() const { return path_; }
  bool has(const char* key) const { return value_->is_object() && value_->contains(key); }
  Node at(const char* key) const;
  Node at(std::size_t index) const;
  std::size_t size() const;

  std::string as_string() const;
  long long as_int() const;
  std::size_t as_count() const;
  bool as_bool() const;

  [[noreturn]] void fail(const std::string& what) const { throw InputError(path_.empty() ? "/" : path_, what); }

 private:
  const json* value_;
  std::string path_;
};

json to_json(const Scalar& s);
json to_json(const Vector& v);
json to_json(const Matrix& m);
json to_json(const std::vector<Vector>& vs);

Scalar parse_scalar(const Node& node, Field field);
Vector parse_vector(const Node& node, Field field, std::optional<Index> length = std::nullopt);
/// Row-major array of rows; shape checked against rows x cols.
Matrix parse_matrix(const Node& node, Field field, Index rows, Index cols);
/// Square matrix of unknown size.
Matrix parse_square(const Node& node, Field field);

/// "1/2", "-3", "0.001", "1e-3", "2.5e2".
mpq_class parse_exact_decimal(const std::string& text);

}  // namespace autoclose::cli
