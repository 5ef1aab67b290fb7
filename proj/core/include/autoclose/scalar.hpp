#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace autoclose {

/// The coefficient domain of a scalar: the rationals, a prime field F_p, or the
/// integer ring (the latter only backs the integer counterexamples).
class Field {
 public:
  enum class Kind : std::uint8_t { rational, prime, integer };

  constexpr Field() = default;

  static constexpr Field rational() { return Field(Kind::rational, 0); }
  static constexpr Field integer() { return Field(Kind::integer, 0); }
  /// Throws ParseError unless p is a prime below 2^62.
  static Field prime(std::uint64_t p);
  /// Accepts "q", "fp:<p>" and "z".
  static Field parse(std::string_view spec);

  constexpr Kind kind() const { return kind_; }
  constexpr std::uint64_t modulus() const { return modulus_; }
  constexpr bool is_field() const { return kind_ != Kind::integer; }
  constexpr bool is_prime() const { return kind_ == Kind::prime; }

  /// Inverse of parse().
  std::string name() const;

  friend constexpr bool operator==(const Field&, const Field&) = default;

 private:
  constexpr Field(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_ = Kind::rational;
  std::uint64_t modulus_ = 0;
};

/// An exact element of Q, F_p or Z.
///
/// Rationals are kept in lowest terms with a positive denominator and prime
/// field values in [0, p). Arithmetic between different fields throws
/// FieldMismatch.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(Field field) : field_(field) {}
  Scalar(Field field, long value);
  Scalar(Field field, const mpz_class& value);
  /// For F_p this maps num/den to num * den^{-1}; for Z the denominator must be 1.
  Scalar(Field field, const mpq_class& value);

  static Scalar zero(Field field) { return Scalar(field); }
  static Scalar one(Field field) { return Scalar(field, 1L); }

  /// Parses the wire format: "a/b" or "a" for Q, "k mod p" (or a plain
  /// integer/fraction) for F_p, "n" for Z.
  static Scalar parse(Field field, std::string_view text);

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  /// Value of a rational or integer scalar.
  const mpq_class& rational_value() const { return value_; }
  /// Canonical representative of a prime field scalar.
  std::uint64_t residue() const { return residue_; }

  /// Wire format: "a/b" (b omitted when 1), "k mod p", "n".
  std::string to_string() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

  Scalar inverse() const;

  /// this += a * b, without intermediate temporaries on the hot path.
  void add_product(const Scalar& a, const Scalar& b);

  friend bool operator==(const Scalar& lhs, const Scalar& rhs);

 private:
  void check_same(const Scalar& rhs, const char* op) const;

  Field field_;
  std::uint64_t residue_ = 0;
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Field& f);

}  // namespace autoclose
