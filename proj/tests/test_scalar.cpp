#include "cehom/scalar.hpp"

#include <cstdint>
#include <vector>

#include "cehom/errors.hpp"
#include "doctest.h"

using cehom::Field;
using cehom::FieldSpec;
using cehom::Scalar;
using cehom::ValidationError;

namespace {

// Exercises the field axioms on a small set of elements.
void check_axioms(const Field& f, const std::vector<Scalar>& elems) {
  for (const Scalar& a : elems) {
    CHECK(f.equal(f.add(a, f.zero()), a));
    CHECK(f.equal(f.mul(a, f.one()), a));
    CHECK(f.is_zero(f.add(a, f.negate(a))));
    CHECK(f.is_zero(f.sub(a, a)));
    if (!f.is_zero(a)) CHECK(f.is_one(f.mul(a, f.invert(a))));
    for (const Scalar& b : elems) {
      CHECK(f.equal(f.add(a, b), f.add(b, a)));
      CHECK(f.equal(f.mul(a, b), f.mul(b, a)));
      for (const Scalar& c : elems) {
        CHECK(f.equal(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
        CHECK(f.equal(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
        CHECK(f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
      }
    }
  }
}

}  // namespace

TEST_CASE("prime fields satisfy the field axioms") {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
    Field f{FieldSpec::prime(p)};
    std::vector<Scalar> elems;
    for (long long n = 0; n < static_cast<long long>(p); ++n) elems.push_back(f.from_integer(n));
    check_axioms(f, elems);
  }
}

TEST_CASE("rationals satisfy the field axioms") {
  Field q{FieldSpec::rationals()};
  std::vector<Scalar> elems{q.from_integer(0),       q.from_integer(1),  q.from_integer(-3),
                            q.from_fraction(2, 7),   q.from_fraction(-5, 4),
                            q.from_fraction(22, 33)};
  check_axioms(q, elems);
}

TEST_CASE("residues are canonical") {
  Field f5{FieldSpec::prime(5)};
  CHECK(f5.from_integer(7) == f5.from_integer(2));
  CHECK(f5.from_integer(7).residue() == 2);
  CHECK(f5.from_integer(-1).residue() == 4);
  // Big-integer reduction: last digit 3 means residue 3 mod 5.
  CHECK(f5.from_integer(cehom::BigInt("123456789012345678901234567893")).residue() == 3);
}

TEST_CASE("inverses match hand values") {
  Field f5{FieldSpec::prime(5)};
  CHECK(f5.invert(f5.from_integer(2)) == f5.from_integer(3));
  Field f3{FieldSpec::prime(3)};
  CHECK(f3.invert(f3.from_integer(2)) == f3.from_integer(2));
  CHECK(f3.from_fraction(1, 2) == f3.from_integer(2));

  Field q{FieldSpec::rationals()};
  CHECK(q.invert(q.from_fraction(3, 4)) == q.from_fraction(4, 3));
  CHECK(q.from_fraction(22, 33) == q.from_fraction(2, 3));
}

TEST_CASE("inversion of zero is rejected") {
  Field q{FieldSpec::rationals()};
  CHECK_THROWS_AS((void)q.invert(q.zero()), ValidationError);
  Field f7{FieldSpec::prime(7)};
  CHECK_THROWS_AS((void)f7.invert(f7.zero()), ValidationError);
}

TEST_CASE("bad characteristics are rejected") {
  CHECK_THROWS_AS(Field{FieldSpec::prime(2)}, ValidationError);
  CHECK_THROWS_AS(Field{FieldSpec::prime(1)}, ValidationError);
  CHECK_THROWS_AS(Field{FieldSpec::prime(0)}, ValidationError);
  CHECK_THROWS_AS(Field{FieldSpec::prime(9)}, ValidationError);
  CHECK_THROWS_AS(Field{FieldSpec::prime(1'000'001)}, ValidationError);  // 101 * 9901
  // Primes beyond the 64-bit-safe product bound are rejected rather than
  // silently overflowed.
  CHECK_THROWS_AS(Field{FieldSpec::prime((1ull << 33) + 9)}, ValidationError);
}

TEST_CASE("denominators divisible by the characteristic are rejected") {
  Field f5{FieldSpec::prime(5)};
  CHECK_THROWS_AS((void)f5.from_fraction(1, 5), ValidationError);
  CHECK_THROWS_AS((void)f5.from_fraction(3, 10), ValidationError);
  CHECK(f5.from_fraction(1, 2) == f5.from_integer(3));
  Field q{FieldSpec::rationals()};
  CHECK_THROWS_AS((void)q.from_fraction(1, 0), ValidationError);
}

TEST_CASE("to_string formats") {
  Field f5{FieldSpec::prime(5)};
  CHECK(f5.to_string(f5.from_integer(7)) == "2");
  CHECK(f5.name() == "F_5");
  Field q{FieldSpec::rationals()};
  CHECK(q.to_string(q.from_fraction(3, 4)) == "3/4");
  CHECK(q.to_string(q.from_fraction(-6, 4)) == "-3/2");
  CHECK(q.to_string(q.from_integer(12)) == "12");
  CHECK(q.name() == "Q");
}

TEST_CASE("primality helper") {
  CHECK(cehom::is_prime(2));
  CHECK(cehom::is_prime(3));
  CHECK(cehom::is_prime(999983));
  CHECK(cehom::is_prime(1000003));
  CHECK_FALSE(cehom::is_prime(1));
  CHECK_FALSE(cehom::is_prime(0));
  CHECK_FALSE(cehom::is_prime(1'000'001));
  CHECK_FALSE(cehom::is_prime(999983ull * 3ull));
}

TEST_CASE("scalars from different fields do not mix") {
  Field f5{FieldSpec::prime(5)};
  Field q{FieldSpec::rationals()};
  CHECK_THROWS_AS((void)q.add(q.one(), f5.one()), ValidationError);
  CHECK_THROWS_AS((void)f5.add(f5.one(), q.one()), ValidationError);
}
