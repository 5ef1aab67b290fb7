#include "autoclose/scalar.hpp"

#include <ostream>

#include "autoclose/errors.hpp"

namespace autoclose {
namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  while (exp > 0) {
    if (exp & 1U) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view text) {
  auto s = trim(text);
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParseError("invalid integer \"" + std::string(text) + "\"");
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError("invalid integer \"" + std::string(text) + "\"");
  }
  std::string owned(s.front() == '+' ? s.substr(1) : s);
  return mpz_class(owned, 10);
}

mpq_class parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return mpq_class(parse_integer(text));
  mpz_class num = parse_integer(text.substr(0, slash));
  mpz_class den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw ParseError("invalid rational \"" + std::string(text) + "\": zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 62U)) {
    throw ParseError("prime modulus out of range: " + std::to_string(p));
  }
  mpz_class z(std::to_string(p), 10);
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0) {
    throw ParseError("modulus is not prime: " + std::to_string(p));
  }
  return Field(Kind::prime, p);
}

Field Field::parse(std::string_view spec) {
  spec = trim(spec);
  if (spec == "q" || spec == "Q") return rational();
  if (spec == "z" || spec == "Z") return integer();
  if (spec.starts_with("fp:")) {
    mpz_class p = parse_integer(spec.substr(3));
    if (p < 2 || !p.fits_ulong_p()) throw ParseError("invalid field spec \"" + std::string(spec) + "\"");
    return prime(p.get_ui());
  }
  throw ParseError("invalid field spec \"" + std::string(spec) + "\" (expected q, fp:<p> or z)");
}

std::string Field::name() const {
  switch (kind_) {
    case Kind::rational: return "q";
    case Kind::integer: return "z";
    case Kind::prime: return "fp:" + std::to_string(modulus_);
  }
  return "?";
}

Scalar::Scalar(Field field, long value) : field_(field) {
  if (field.is_prime()) {
    residue_ = reduce_mpz(mpz_class(value), field.modulus());
  } else {
    value_ = value;
  }
}

Scalar::Scalar(Field field, const mpz_class& value) : field_(field) {
  if (field.is_prime()) {
    residue_ = reduce_mpz(value, field.modulus());
  } else {
    value_ = value;
  }
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field) {
  mpq_class q = value;
  q.canonicalize();
  if (field.is_prime()) {
    std::uint64_t p = field.modulus();
    std::uint64_t den = reduce_mpz(q.get_den(), p);
    if (den == 0) throw DivisionByZero();
    residue_ = mod_mul(reduce_mpz(q.get_num(), p), mod_pow(den, p - 2, p), p);
  } else if (field.kind() == Field::Kind::integer) {
    if (q.get_den() != 1) throw InexactDivision(q.get_str() + " is not an integer");
    value_ = q;
  } else {
    value_ = q;
  }
}

Scalar Scalar::parse(Field field, std::string_view text) {
  auto s = trim(text);
  if (field.is_prime()) {
    auto pos = s.find("mod");
    if (pos != std::string_view::npos) {
      mpz_class p = parse_integer(s.substr(pos + 3));
      if (p != mpz_class(std::to_string(field.modulus()), 10)) {
        throw FieldMismatch("\"" + std::string(text) + "\" is not in " + field.name());
      }
      return Scalar(field, parse_rational(trim(s.substr(0, pos))));
    }
    return Scalar(field, parse_rational(s));
  }
  if (s.find("mod") != std::string_view::npos) {
    throw FieldMismatch("\"" + std::string(text) + "\" is not in " + field.name());
  }
  if (field.kind() == Field::Kind::integer) {
    if (s.find('/') != std::string_view::npos) throw ParseError("invalid integer \"" + std::string(text) + "\"");
    return Scalar(field, parse_integer(s));
  }
  return Scalar(field, parse_rational(s));
}

bool Scalar::is_zero() const {
  return field_.is_prime() ? residue_ == 0 : sgn(value_) == 0;
}

bool Scalar::is_one() const {
  return field_.is_prime() ? residue_ == 1 % field_.modulus() : value_ == 1;
}

std::string Scalar::to_string() const {
  if (field_.is_prime()) return std::to_string(residue_) + " mod " + std::to_string(field_.modulus());
  if (field_.kind() == Field::Kind::integer) return value_.get_num().get_str();
  return value_.get_str();  // GMP omits the denominator when it is 1
}

void Scalar::check_same(const Scalar& rhs, const char* op) const {
  if (!(field_ == rhs.field_)) {
    throw FieldMismatch(std::string(op) + " between " + field_.name() + " and " + rhs.field_.name());
  }
}

Scalar Scalar::operator-() const {
  Scalar out(*this);
  if (field_.is_prime()) {
    out.residue_ = residue_ == 0 ? 0 : field_.modulus() - residue_;
  } else {
    out.value_ = -value_;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same(rhs, "addition");
  if (field_.is_prime()) {
    residue_ += rhs.residue_;
    if (residue_ >= field_.modulus()) residue_ -= field_.modulus();
  } else {
    value_ += rhs.value_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  check_same(rhs, "subtraction");
  if (field_.is_prime()) {
    residue_ = residue_ >= rhs.residue_ ? residue_ - rhs.residue_ : residue_ + field_.modulus() - rhs.residue_;
  } else {
    value_ -= rhs.value_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same(rhs, "multiplication");
  if (field_.is_prime()) {
    residue_ = mod_mul(residue_, rhs.residue_, field_.modulus());
  } else {
    value_ *= rhs.value_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same(rhs, "division");
  if (rhs.is_zero()) throw DivisionByZero();
  if (field_.is_prime()) {
    residue_ = mod_mul(residue_, mod_pow(rhs.residue_, field_.modulus() - 2, field_.modulus()), field_.modulus());
  } else if (field_.kind() == Field::Kind::integer) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), value_.get_num_mpz_t(), rhs.value_.get_num_mpz_t());
    if (r != 0) throw InexactDivision(to_string() + " / " + rhs.to_string());
    value_ = q;
  } else {
    value_ /= rhs.value_;
  }
  return *this;
}

Scalar Scalar::inverse() const { return Scalar::one(field_) / *this; }

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check_same(a, "multiply-add");
  check_same(b, "multiply-add");
  if (field_.is_prime()) {
    std::uint64_t p = field_.modulus();
    residue_ = static_cast<std::uint64_t>((static_cast<u128>(a.residue_) * b.residue_ + residue_) % p);
  } else {
    value_ += a.value_ * b.value_;
  }
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
  if (!(lhs.field_ == rhs.field_)) return false;
  return lhs.field_.is_prime() ? lhs.residue_ == rhs.residue_ : lhs.value_ == rhs.value_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.name(); }

}  // namespace autoclose
