#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "cehom/errors.hpp"

namespace cehom {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class FieldKind { PrimeField, Rationals };

struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t p = 0;  // characteristic, PrimeField only

  static FieldSpec prime(std::uint64_t p) { return {FieldKind::PrimeField, p}; }
  static FieldSpec rationals() { return {FieldKind::Rationals, 0}; }
  bool operator==(const FieldSpec&) const = default;
};

/// Exact field element: a canonical residue in [0, p) or a reduced rational
/// with positive denominator.  All arithmetic goes through Field.
class Scalar {
 public:
  Scalar() = default;
  bool operator==(const Scalar& other) const = default;

  bool is_residue() const { return std::holds_alternative<std::uint64_t>(v_); }
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
  const BigRational& rational() const { return std::get<BigRational>(v_); }

 private:
  friend class Field;
  explicit Scalar(std::uint64_t r) : v_(r) {}
  explicit Scalar(BigRational q) : v_(std::move(q)) {}

  std::variant<std::uint64_t, BigRational> v_{std::uint64_t{0}};
};

bool is_prime(std::uint64_t n);

/// Arithmetic context for F_p (p an odd prime) or Q.  Immutable.
class Field {
 public:
  explicit Field(FieldSpec spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_prime_field() const { return spec_.kind == FieldKind::PrimeField; }
  std::uint64_t characteristic() const { return is_prime_field() ? spec_.p : 0; }
  std::string name() const;  // "F_5" or "Q"

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(long long n) const;
  Scalar from_integer(const BigInt& n) const;
  Scalar from_fraction(long long num, long long den) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar negate(const Scalar& a) const;
  Scalar invert(const Scalar& a) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  bool equal(const Scalar& a, const Scalar& b) const { return a == b; }
  std::string to_string(const Scalar& a) const;

 private:
  std::uint64_t res(const Scalar& a) const;
  const BigRational& rat(const Scalar& a) const;

  FieldSpec spec_;
};

}  // namespace cehom
