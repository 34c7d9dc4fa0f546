#include "cehom/weighted_linear.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cehom/errors.hpp"
#include "doctest.h"

using cehom::BasedSpace;
using cehom::Bidegree;
using cehom::ChainComplex;
using cehom::CheckFailure;
using cehom::DimensionTable;
using cehom::Field;
using cehom::FieldSpec;
using cehom::GradingDelta;
using cehom::SparseMap;
using cehom::ValidationError;

namespace {

BasedSpace plain_space(const std::string& prefix, std::size_t n) {
  std::vector<std::pair<std::string, Bidegree>> basis;
  for (std::size_t i = 0; i < n; ++i) basis.emplace_back(prefix + std::to_string(i), Bidegree{});
  return BasedSpace(std::move(basis));
}

}  // namespace

TEST_CASE("bidegree derivation") {
  Bidegree b{4, 6, 4};
  CHECK(b.s() == 3);
  CHECK(b.t() == 3);
  CHECK(b.total_degree() == 6);
  Bidegree c{5, 0, 5};  // degree-zero divided power
  CHECK(c.s() == 4);
  CHECK(c.t() == -4);
  CHECK(c.total_degree() == 0);
}

TEST_CASE("based space rejects duplicate labels and resolves indices") {
  CHECK_THROWS_AS(BasedSpace({{"a", Bidegree{}}, {"a", Bidegree{}}}), ValidationError);
  BasedSpace s({{"a", Bidegree{1, 0, 0}}, {"b", Bidegree{1, 1, 1}}});
  CHECK(s.dim() == 2);
  CHECK(s.index_of("b") == 1);
  CHECK_FALSE(s.index_of("c").has_value());
  CHECK(s.label(0) == "a");
  CHECK(s.bidegree(1) == Bidegree{1, 1, 1});
}

TEST_CASE("sparse map validation") {
  Field q{FieldSpec::rationals()};
  BasedSpace dom = plain_space("c", 2);
  BasedSpace cod = plain_space("r", 2);

  CHECK_THROWS_AS(SparseMap(dom, cod, {{"r0", "nope", q.one()}}, q), ValidationError);
  CHECK_THROWS_AS(SparseMap(dom, cod, {{"nope", "c0", q.one()}}, q), ValidationError);
  CHECK_THROWS_AS(SparseMap(dom, cod, {{"r0", "c0", q.zero()}}, q), ValidationError);
  CHECK_THROWS_AS(
      SparseMap(dom, cod, {{"r0", "c0", q.one()}, {"r0", "c0", q.one()}}, q),
      ValidationError);
  CHECK_THROWS_AS(SparseMap::from_indexed(dom, cod, {{5, 0, q.one()}}, q), ValidationError);

  SparseMap ok(dom, cod, {{"r1", "c0", q.from_integer(2)}}, q);
  CHECK(ok.entries().size() == 1);
  CHECK(ok.entries()[0].row == 1);
  CHECK(ok.entries()[0].col == 0);
}

TEST_CASE("sparse map enforces a declared grading shift") {
  Field q{FieldSpec::rationals()};
  BasedSpace dom({{"x", Bidegree{2, 3, 2}}});
  BasedSpace good({{"y", Bidegree{2, 2, 1}}});
  BasedSpace bad({{"y", Bidegree{2, 3, 1}}});
  GradingDelta delta{0, -1, -1};
  CHECK_NOTHROW(SparseMap(dom, good, {{"y", "x", q.one()}}, q, delta));
  CHECK_THROWS_AS(SparseMap(dom, bad, {{"y", "x", q.one()}}, q, delta), ValidationError);
}

TEST_CASE("rank of the identity and of a scaled line") {
  Field f5{FieldSpec::prime(5)};
  BasedSpace dom = plain_space("c", 3);
  BasedSpace cod = plain_space("r", 3);
  std::vector<SparseMap::Entry> id;
  for (std::size_t i = 0; i < 3; ++i) id.push_back({i, i, f5.one()});
  CHECK(rank(SparseMap::from_indexed(dom, cod, id, f5), f5) == 3);

  // Multiplication by 3 on a line: rank 1 over Q, the zero map over F_3.
  Field q{FieldSpec::rationals()};
  BasedSpace line = plain_space("e", 1);
  SparseMap times3(line, line, {{"e0", "e0", q.from_integer(3)}}, q);
  CHECK(rank(times3, q) == 1);

  Field f3{FieldSpec::prime(3)};
  CHECK(f3.is_zero(f3.from_integer(3)));  // the entry itself vanishes...
  CHECK_THROWS_AS(SparseMap(line, line, {{"e0", "e0", f3.from_integer(3)}}, f3),
                  ValidationError);  // ...so it may not be stored
  SparseMap zero3(line, line, {}, f3);
  CHECK(rank(zero3, f3) == 0);
}

TEST_CASE("rational rank agrees with large-prime ranks on random integer matrices") {
  Field q{FieldSpec::rationals()};
  Field fa{FieldSpec::prime(999983)};
  Field fb{FieldSpec::prime(1000003)};
  std::mt19937 rng(20240817u);
  std::uniform_int_distribution<int> value(-9, 9);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t nrows = 12, ncols = 9;
    std::vector<SparseMap::Entry> eq, ea, eb;
    for (std::size_t r = 0; r < nrows; ++r) {
      for (std::size_t c = 0; c < ncols; ++c) {
        if (coin(rng) > 0.35) continue;
        int v = value(rng);
        if (v == 0) continue;
        eq.push_back({r, c, q.from_integer(v)});
        ea.push_back({r, c, fa.from_integer(v)});
        eb.push_back({r, c, fb.from_integer(v)});
      }
    }
    BasedSpace dom = plain_space("c", ncols);
    BasedSpace cod = plain_space("r", nrows);
    long rq = rank(SparseMap::from_indexed(dom, cod, eq, q), q);
    long ra = rank(SparseMap::from_indexed(dom, cod, ea, fa), fa);
    long rb = rank(SparseMap::from_indexed(dom, cod, eb, fb), fb);
    CHECK(rq == ra);
    CHECK(rq == rb);
  }
}

TEST_CASE("dimension table accumulates and drops zeros") {
  DimensionTable t;
  t.add(2, 0, 1, 3);
  t.add(2, 0, 1, 2);
  CHECK(t.at_bidegree(2, 0, 1) == 5);
  t.add(2, 1, 0, 4);
  CHECK(t.at_total(2, 1) == 9);  // both bidegrees sit in total degree 1
  CHECK(t.total_dimension(2) == 9);
  CHECK(t.totals(2) == std::map<int, long>{{1, 9}});
  CHECK(t.bidegrees(2) ==
        std::map<std::pair<int, int>, long>{{{0, 1}, 5}, {{1, 0}, 4}});
  CHECK(t.weights() == std::vector<int>{2});

  t.add(2, 0, 1, -5);
  CHECK(t.at_bidegree(2, 0, 1) == 0);
  CHECK(t.raw().size() == 1);
  CHECK_THROWS_AS(t.add(2, 1, 0, -7), CheckFailure);

  DimensionTable u;
  u.add(2, 1, 0, 4);
  CHECK(t == u);
  CHECK(u.slice(3).empty());
  CHECK(u.slice(2) == u);
}

TEST_CASE("homology of an isomorphism vanishes") {
  Field q{FieldSpec::rationals()};
  ChainComplex complex;
  complex.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"u", Bidegree{1, 0, 0}}});
  complex.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"v", Bidegree{1, 1, 1}}});
  complex.boundaries.push_back(
      SparseMap(complex.spaces[1], complex.spaces[0], {{"u", "v", q.one()}}, q));
  CHECK(homology_dims(complex, q).empty());
}

TEST_CASE("zero differentials reproduce the chain dimensions") {
  Field q{FieldSpec::rationals()};
  ChainComplex complex;
  complex.spaces.emplace_back(std::vector<std::pair<std::string, Bidegree>>{
      {"a0", Bidegree{1, 0, 0}}, {"a1", Bidegree{1, 1, 0}}});
  complex.spaces.emplace_back(std::vector<std::pair<std::string, Bidegree>>{
      {"b0", Bidegree{1, 1, 1}}, {"b1", Bidegree{1, 2, 1}}, {"b2", Bidegree{1, 3, 1}}});
  complex.boundaries.push_back(SparseMap(complex.spaces[1], complex.spaces[0], {}, q));
  DimensionTable h = homology_dims(complex, q);
  CHECK(h.total_dimension(1) == 5);
  for (const auto& [key, dim] : chain_dimensions(complex)) {
    auto [w, t, l] = key;
    CHECK(h.at_bidegree(w, l - 1, t) == dim);
  }
}

TEST_CASE("mod-p homology dominates rational homology on an integral model") {
  // One cell attached along multiplication by 3.
  auto build = [](const Field& f) {
    ChainComplex complex;
    complex.spaces.emplace_back(
        std::vector<std::pair<std::string, Bidegree>>{{"u", Bidegree{1, 0, 0}}});
    complex.spaces.emplace_back(
        std::vector<std::pair<std::string, Bidegree>>{{"v", Bidegree{1, 1, 1}}});
    std::vector<SparseMap::LabeledEntry> entries;
    if (!f.is_zero(f.from_integer(3))) entries.push_back({"u", "v", f.from_integer(3)});
    complex.boundaries.push_back(SparseMap(complex.spaces[1], complex.spaces[0], entries, f));
    return complex;
  };
  Field q{FieldSpec::rationals()};
  Field f3{FieldSpec::prime(3)};
  DimensionTable hq = homology_dims(build(q), q);
  DimensionTable h3 = homology_dims(build(f3), f3);
  CHECK(hq.total_dimension(1) == 0);
  CHECK(h3.total_dimension(1) == 2);
  for (const auto& [key, dim] : hq.raw()) {
    auto [w, s, t] = key;
    CHECK(h3.at_bidegree(w, s, t) >= dim);
  }
}

TEST_CASE("broken differentials are rejected") {
  Field q{FieldSpec::rationals()};

  ChainComplex bad;
  bad.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"a", Bidegree{1, 0, 0}}});
  bad.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"b", Bidegree{1, 1, 1}}});
  bad.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"c", Bidegree{1, 2, 2}}});
  bad.boundaries.push_back(SparseMap(bad.spaces[1], bad.spaces[0], {{"a", "b", q.one()}}, q));
  bad.boundaries.push_back(SparseMap(bad.spaces[2], bad.spaces[1], {{"b", "c", q.one()}}, q));
  CHECK_THROWS_AS((void)homology_dims(bad, q), CheckFailure);

  ChainComplex wrong_level;
  wrong_level.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"a", Bidegree{1, 0, 1}}});
  CHECK_THROWS_AS((void)homology_dims(wrong_level, q), ValidationError);

  ChainComplex missing_boundary;
  missing_boundary.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"a", Bidegree{1, 0, 0}}});
  missing_boundary.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"b", Bidegree{1, 1, 1}}});
  CHECK_THROWS_AS((void)homology_dims(missing_boundary, q), ValidationError);

  // A boundary entry crossing (weight, t) blocks is a modelling error.
  ChainComplex leak;
  leak.spaces.emplace_back(std::vector<std::pair<std::string, Bidegree>>{
      {"a", Bidegree{1, 0, 0}}, {"a2", Bidegree{1, 1, 0}}});
  leak.spaces.emplace_back(
      std::vector<std::pair<std::string, Bidegree>>{{"b", Bidegree{1, 2, 1}}});
  leak.boundaries.push_back(SparseMap(leak.spaces[1], leak.spaces[0], {{"a", "b", q.one()}}, q));
  CHECK_THROWS_AS((void)homology_dims(leak, q), CheckFailure);
}
