#include "json_io.hpp"

#include <cctype>

#include "autoclose/errors.hpp"

namespace autoclose::cli {

Node Node::at(const char* key) const {
  if (!value_->is_object()) fail("expected an object");
  if (!value_->contains(key)) throw InputError(path_ + "/" + key, "missing");
  return Node((*value_)[key], path_ + "/" + key);
}

Node Node::at(std::size_t index) const {
  if (!value_->is_array()) fail("expected an array");
  if (index >= value_->size()) throw InputError(path_ + "/" + std::to_string(index), "missing");
  return Node((*value_)[index], path_ + "/" + std::to_string(index));
}

std::size_t Node::size() const {
  if (!value_->is_array()) fail("expected an array");
  return value_->size();
}

std::string Node::as_string() const {
  if (!value_->is_string()) fail("expected a string");
  return value_->get<std::string>();
}

long long Node::as_int() const {
  if (!value_->is_number_integer()) fail("expected an integer");
  return value_->get<long long>();
}

std::size_t Node::as_count() const {
  long long v = as_int();
  if (v < 0) fail("expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

bool Node::as_bool() const {
  if (!value_->is_boolean()) fail("expected true or false");
  return value_->get<bool>();
}

json to_json(const Scalar& s) { return s.to_string(); }

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(to_dense(m.row(r), m.field(), m.cols())));
  return out;
}

json to_json(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Scalar parse_scalar(const Node& node, Field field) {
  const json& v = node.value();
  try {
    if (v.is_string()) return Scalar::parse(field, v.get<std::string>());
    if (v.is_number_integer()) return Scalar(field, mpz_class(v.dump(), 10));
  } catch (const AlgebraError& e) {
    node.fail(e.what());
  }
  node.fail("expected a scalar string such as \"3/4\" or \"2 mod 5\"");
}

Vector parse_vector(const Node& node, Field field, std::optional<Index> length) {
  const std::size_t n = node.size();
  if (length && n != *length) node.fail("expected " + std::to_string(*length) + " entries, got " + std::to_string(n));
  Vector out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(parse_scalar(node.at(k), field));
  return out;
}

Matrix parse_matrix(const Node& node, Field field, Index rows, Index cols) {
  if (node.size() != rows) node.fail("expected " + std::to_string(rows) + " rows, got " + std::to_string(node.size()));
  std::vector<Vector> dense;
  for (Index r = 0; r < rows; ++r) dense.push_back(parse_vector(node.at(r), field, cols));
  std::vector<SparseRow> sparse;
  for (auto& row : dense) sparse.push_back(to_sparse(row));
  return Matrix::from_rows(field, cols, std::move(sparse));
}

Matrix parse_square(const Node& node, Field field) {
  const Index n = node.size();
  return parse_matrix(node, field, n, n);
}

mpq_class parse_exact_decimal(const std::string& text) {
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw ParseError("invalid rational \"" + text + "\"");
    q.canonicalize();
    return q;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  bool after_point = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digits += c;
      seen_digit = true;
      if (after_point) --exponent;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ParseError("invalid number \"" + text + "\"");
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw ParseError("invalid number \"" + text + "\"");
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(text.substr(pos + 1), &used);
    } catch (const std::exception&) {
      throw ParseError("invalid exponent in \"" + text + "\"");
    }
    if (pos + 1 + used != text.size()) throw ParseError("invalid number \"" + text + "\"");
    exponent += e;
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace autoclose::cli
