#include "cehom/scalar.hpp"

#include <utility>

namespace cehom {

namespace {

constexpr std::uint64_t kMaxCharacteristic = 0x7fffffffu;  // keeps products in 64 bits

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // Extended Euclid on (a, p), a in [1, p).
  long long t = 0, new_t = 1;
  long long r = static_cast<long long>(p), new_r = static_cast<long long>(a);
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw ValidationError("element has no inverse modulo " + std::to_string(p));
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(FieldSpec spec) : spec_(spec) {
  if (spec_.kind == FieldKind::PrimeField) {
    if (spec_.p == 2) throw ValidationError("even characteristic unsupported");
    if (spec_.p > kMaxCharacteristic)
      throw ValidationError("characteristic too large: " + std::to_string(spec_.p));
    if (spec_.p < 3 || !is_prime(spec_.p))
      throw ValidationError("characteristic must be an odd prime, got " + std::to_string(spec_.p));
  }
}

std::string Field::name() const {
  return is_prime_field() ? "F_" + std::to_string(spec_.p) : "Q";
}

std::uint64_t Field::res(const Scalar& a) const {
  if (!a.is_residue()) throw ValidationError("scalar is not a prime-field element");
  return a.residue();
}

const BigRational& Field::rat(const Scalar& a) const {
  if (a.is_residue()) throw ValidationError("scalar is not a rational");
  return a.rational();
}

Scalar Field::zero() const {
  return is_prime_field() ? Scalar(std::uint64_t{0}) : Scalar(BigRational(0));
}

Scalar Field::one() const {
  return is_prime_field() ? Scalar(std::uint64_t{1}) : Scalar(BigRational(1));
}

Scalar Field::from_integer(long long n) const {
  if (!is_prime_field()) return Scalar(BigRational(n));
  long long p = spec_.p;
  long long r = n % p;
  if (r < 0) r += p;
  return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::from_integer(const BigInt& n) const {
  if (!is_prime_field()) return Scalar(BigRational(n));
  BigInt r = n % spec_.p;
  if (r < 0) r += spec_.p;
  return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::from_fraction(long long num, long long den) const {
  if (den == 0) throw ValidationError("zero denominator");
  if (!is_prime_field()) return Scalar(BigRational(BigInt(num), BigInt(den)));
  Scalar d = from_integer(den);
  if (is_zero(d))
    throw ValidationError("denominator divisible by characteristic " + std::to_string(spec_.p));
  return mul(from_integer(num), invert(d));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (!is_prime_field()) return Scalar(BigRational(rat(a) + rat(b)));
  std::uint64_t s = res(a) + res(b);
  if (s >= spec_.p) s -= spec_.p;
  return Scalar(s);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, negate(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (!is_prime_field()) return Scalar(BigRational(rat(a) * rat(b)));
  return Scalar((res(a) * res(b)) % spec_.p);
}

Scalar Field::negate(const Scalar& a) const {
  if (!is_prime_field()) return Scalar(BigRational(-rat(a)));
  std::uint64_t r = res(a);
  return Scalar(r == 0 ? 0 : spec_.p - r);
}

Scalar Field::invert(const Scalar& a) const {
  if (is_zero(a)) throw ValidationError("inversion of zero");
  if (!is_prime_field()) return Scalar(BigRational(1 / rat(a)));
  return Scalar(mod_inverse(res(a), spec_.p));
}

bool Field::is_zero(const Scalar& a) const {
  return is_prime_field() ? res(a) == 0 : rat(a).is_zero();
}

bool Field::is_one(const Scalar& a) const { return a == one(); }

std::string Field::to_string(const Scalar& a) const {
  if (is_prime_field()) return std::to_string(res(a));
  const BigRational& q = rat(a);
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace cehom
