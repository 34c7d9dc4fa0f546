#include "cehom/ce_complex.hpp"

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cehom/errors.hpp"
#include "doctest.h"

using cehom::build_ce_complex;
using cehom::ce_basis;
using cehom::ce_differential;
using cehom::ce_homology;
using cehom::CEMonomial;
using cehom::CEOptions;
using cehom::ChainComplex;
using cehom::CheckFailure;
using cehom::compare;
using cehom::CompareReport;
using cehom::DimensionTable;
using cehom::Field;
using cehom::FieldSpec;
using cehom::make_tensor_lie;
using cehom::Scalar;
using cehom::Surface;
using cehom::TensorLieAlgebra;
using cehom::ValidationError;

namespace {

std::size_t at(const TensorLieAlgebra& g, const std::string& label) {
  auto idx = g.index_of(label);
  REQUIRE_MESSAGE(idx.has_value(), "missing element ", label);
  return *idx;
}

// Per-(weight, t) Euler characteristics of chains and homology must agree.
void check_euler(const ChainComplex& complex, const DimensionTable& hom) {
  std::map<std::pair<int, int>, long> chain_chi, hom_chi;
  for (const auto& [key, dim] : chain_dimensions(complex)) {
    auto [w, t, l] = key;
    chain_chi[{w, t}] += (l % 2 == 0 ? dim : -dim);
  }
  for (const auto& [key, dim] : hom.raw()) {
    auto [w, s, t] = key;
    hom_chi[{w, t}] += ((s + 1) % 2 == 0 ? dim : -dim);
  }
  for (const auto& [key, chi] : chain_chi) CHECK(hom_chi[key] == chi);
  for (const auto& [key, chi] : hom_chi) CHECK(chain_chi[key] == chi);
}

}  // namespace

TEST_CASE("torus monomial counts at low weight") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 2);
  CHECK(ce_basis(g, 1).size() == 4);
  auto w2 = ce_basis(g, 2);
  CHECK(w2.size() == 12);
  int len1 = 0, len2 = 0;
  for (const auto& m : w2) {
    if (m.word_length() == 1) ++len1;
    if (m.word_length() == 2) ++len2;
  }
  CHECK(len1 == 4);
  CHECK(len2 == 8);
  CHECK(ce_basis(g, 0).empty());
  CHECK_THROWS_AS((void)ce_basis(g, -1), ValidationError);
}

TEST_CASE("monomial labels, weights and degrees") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 4);
  const std::size_t D = at(g, "d|x2"), A = at(g, "a1|x2"), B = at(g, "b1|x2");

  CEMonomial gamma2{{{D, 2}}, {}};
  CHECK(monomial_label(g, gamma2) == "g2(d|x2)");
  CHECK(monomial_degree(g, gamma2) == 4);
  CHECK(monomial_weight(g, gamma2) == 2);
  CHECK(gamma2.word_length() == 2);

  CEMonomial mixed{{{D, 1}}, {A, B}};
  CHECK(monomial_label(g, mixed) == "g1(d|x2)*<a1|x2,b1|x2>");
  CHECK(monomial_degree(g, mixed) == 4);
  CHECK(monomial_weight(g, mixed) == 3);
  CHECK(mixed.word_length() == 3);
}

TEST_CASE("frozen differential values on the torus") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 4);
  const std::size_t D = at(g, "d|x2"), A = at(g, "a1|x2"), B = at(g, "b1|x2"),
                    C = at(g, "c|x2"), D2 = at(g, "d|[x2,x2]"), A2 = at(g, "a1|[x2,x2]"),
                    B2 = at(g, "b1|[x2,x2]"), C2 = at(g, "c|[x2,x2]");

  // d(gamma_2(d|x2)) = 1/2 <d|[x2,x2]>.
  auto d_gamma2D = ce_differential(g, CEMonomial{{{D, 2}}, {}});
  REQUIRE(d_gamma2D.size() == 1);
  CHECK(d_gamma2D.begin()->first == CEMonomial{{}, {D2}});
  CHECK(d_gamma2D.begin()->second == q.from_fraction(1, 2));

  // c|x2 squares to zero, so its divided square is a cycle.
  CHECK(ce_differential(g, CEMonomial{{{C, 2}}, {}}).empty());

  // d<a1|x2, b1|x2> = +<c|[x2,x2]>.
  auto d_ab = ce_differential(g, CEMonomial{{}, {A, B}});
  REQUIRE(d_ab.size() == 1);
  CHECK(d_ab.begin()->first == CEMonomial{{}, {C2}});
  CHECK(q.is_one(d_ab.begin()->second));

  // d(g1(d|x2) g1(c|x2)) = <c|[x2,x2]> from the distinct-slot pairing.
  auto d_dc = ce_differential(g, CEMonomial{{{D, 1}, {C, 1}}, {}});
  REQUIRE(d_dc.size() == 1);
  CHECK(d_dc.begin()->first == CEMonomial{{}, {C2}});
  CHECK(q.is_one(d_dc.begin()->second));

  // d(g1(d|x2) <a1|x2>) = g1(a1|[x2,x2]).
  auto d_da = ce_differential(g, CEMonomial{{{D, 1}}, {A}});
  REQUIRE(d_da.size() == 1);
  CHECK(d_da.begin()->first == CEMonomial{{{A2, 1}}, {}});
  CHECK(q.is_one(d_da.begin()->second));

  // d(g1(d|x2) <a1|x2, b1|x2>): exterior pair, then both mixed pairs with
  // alternating signs.
  auto d_dab = ce_differential(g, CEMonomial{{{D, 1}}, {A, B}});
  REQUIRE(d_dab.size() == 3);
  CHECK(d_dab.at(CEMonomial{{{D, 1}}, {C2}}) == q.from_integer(1));
  CHECK(d_dab.at(CEMonomial{{{A2, 1}}, {B}}) == q.from_integer(1));
  CHECK(d_dab.at(CEMonomial{{{B2, 1}}, {A}}) == q.from_integer(-1));

  // Merging into an existing divided power picks up the binomial factor:
  // d(g1(d|x2) g1(a1|[x2,x2]) <a1|x2>) = 2 g2(a1|[x2,x2]).
  auto d_merge = ce_differential(g, CEMonomial{{{D, 1}, {A2, 1}}, {A}});
  REQUIRE(d_merge.size() == 1);
  CHECK(d_merge.begin()->first == CEMonomial{{{A2, 2}}, {}});
  CHECK(d_merge.begin()->second == q.from_integer(2));

  // The odd-insertion sign: d(<a1|x2> g2(c|x2) ...) exercised via
  // g2(d|x2) <a1|x2, b1|x2> whose self-pairing passes both exterior slots.
  auto d_g2ab = ce_differential(g, CEMonomial{{{D, 2}}, {A, B}});
  CHECK(d_g2ab.at(CEMonomial{{}, {A, B, D2}}) == q.from_fraction(1, 2));
  CHECK(d_g2ab.at(CEMonomial{{{D, 2}}, {C2}}) == q.from_integer(1));
}

TEST_CASE("weight-two boundary matrix") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 2);
  ChainComplex complex = build_ce_complex(g, 2);
  REQUIRE(complex.spaces.size() == 3);
  CHECK(complex.spaces[0].dim() == 0);
  CHECK(complex.spaces[1].dim() == 4);
  CHECK(complex.spaces[2].dim() == 8);
  // Five of the eight length-two monomials have a (single-term) boundary:
  // g2(d|x2), g1(d|x2)*g1(c|x2), <a1|x2,b1|x2>, g1(d|x2)*<a1|x2> and
  // g1(d|x2)*<b1|x2>; the three involving only c|x2 are cycles.
  const auto& d2 = complex.boundaries[1];
  CHECK(d2.entries().size() == 5);
  CHECK(rank(d2, q) == 4);
  // The t = 1 strip is a 1 x 2 block of ones: both total-degree-two sources
  // hit <c|[x2,x2]> with coefficient 1.
  auto c2_row = complex.spaces[1].index_of("<c|[x2,x2]>");
  REQUIRE(c2_row.has_value());
  int hits = 0;
  for (const auto& e : d2.entries()) {
    if (e.row != *c2_row) continue;
    ++hits;
    CHECK(q.is_one(e.value));
    const std::string& col = d2.domain().label(e.col);
    CHECK((col == "g1(d|x2)*g1(c|x2)" || col == "<a1|x2,b1|x2>"));
  }
  CHECK(hits == 2);
}

TEST_CASE("torus homology dimensions at low weight") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 3);
  CHECK(ce_homology(g, 0).empty());
  CHECK(ce_homology(g, 1).totals(1) == std::map<int, long>{{0, 1}, {1, 2}, {2, 1}});
  CHECK(ce_homology(g, 2).totals(2) == std::map<int, long>{{0, 1}, {1, 2}, {2, 1}});
  CHECK(ce_homology(g, 3).totals(3) ==
        std::map<int, long>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 2}});
}

TEST_CASE("punctured-torus homology dimensions at low weight") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::punctured(1), q, 2);
  CHECK(ce_homology(g, 1).totals(1) == std::map<int, long>{{0, 1}, {1, 2}});
  CHECK(ce_homology(g, 2).totals(2) == std::map<int, long>{{0, 1}, {1, 2}, {2, 2}});
}

TEST_CASE("betti_table merges weights") {
  DimensionTable t = betti_table(Surface::torus(), 3);
  CHECK(t.weights() == std::vector<int>{1, 2, 3});
  CHECK(t.total_dimension(1) == 4);
  CHECK(t.total_dimension(2) == 4);
  CHECK(t.total_dimension(3) == 12);
  CHECK_THROWS_AS((void)betti_table(Surface::torus(), 0), ValidationError);
}

TEST_CASE("degree-zero divided powers of c|x2 sit at the corner bidegree") {
  Field f5{FieldSpec::prime(5)};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), f5, 5);
  const std::size_t C = at(g, "c|x2");
  CEMonomial corner{{{C, 5}}, {}};
  CHECK(monomial_degree(g, corner) == 0);
  CHECK(monomial_weight(g, corner) == 5);
  ChainComplex complex = build_ce_complex(g, 5);
  auto idx = complex.spaces[5].index_of("g5(c|x2)");
  REQUIRE(idx.has_value());
  cehom::Bidegree b = complex.spaces[5].bidegree(*idx);
  CHECK(b == cehom::Bidegree{5, 0, 5});
  CHECK(b.s() == 4);
  CHECK(b.t() == -4);
  CHECK(b.total_degree() == 0);
}

TEST_CASE("chain and homology Euler characteristics agree per strip") {
  for (const FieldSpec& spec : {FieldSpec::rationals(), FieldSpec::prime(3)}) {
    Field f{spec};
    TensorLieAlgebra g = make_tensor_lie(Surface::torus(), f, 4);
    for (int w = 1; w <= 4; ++w) {
      ChainComplex complex = build_ce_complex(g, w);
      check_euler(complex, homology_dims(complex, f));
    }
  }
}

TEST_CASE("the square-zero check composes to zero on every monomial") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 4);
  for (const CEMonomial& m : ce_basis(g, 4)) {
    std::map<CEMonomial, Scalar> square;
    for (const auto& [mid, c1] : ce_differential(g, m)) {
      for (const auto& [final_m, c2] : ce_differential(g, mid)) {
        auto it = square.emplace(final_m, q.zero()).first;
        it->second = q.add(it->second, q.mul(c1, c2));
        if (q.is_zero(it->second)) square.erase(it);
      }
    }
    CHECK_MESSAGE(square.empty(), "d^2 != 0 on ", monomial_label(g, m));
  }
}

TEST_CASE("the injected sign fault is caught by the square-zero check") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 4);
  CEOptions fault;
  fault.inject_sign_fault = true;
  // Weights below four have no monomial exposing the flipped sign.
  CHECK_NOTHROW((void)ce_homology(g, 3, fault));
  CHECK_THROWS_AS((void)ce_homology(g, 4, fault), CheckFailure);
}

TEST_CASE("weight bounds on complex construction") {
  Field q{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(Surface::torus(), q, 2);
  CHECK_THROWS_AS((void)build_ce_complex(g, 3), ValidationError);
  CHECK_THROWS_AS((void)build_ce_complex(g, -1), ValidationError);
  ChainComplex empty = build_ce_complex(g, 0);
  CHECK(empty.spaces.empty());
}

TEST_CASE("mod-p and rational homology agree below the characteristic") {
  for (int w = 1; w <= 4; ++w) {
    CompareReport report = compare(Surface::torus(), 5, w);
    CHECK(report.per_degree_equal);
    CHECK(report.prime == 5);
    CHECK(report.weight == w);
    for (const auto& [degree, dq, dp] : report.rows) CHECK(dq == dp);
  }
  CompareReport punctured = compare(Surface::punctured(1), 3, 2);
  CHECK(punctured.per_degree_equal);
  CHECK_THROWS_AS((void)compare(Surface::torus(), 5, 5), ValidationError);
  CHECK_THROWS_AS((void)compare(Surface::torus(), 5, 0), ValidationError);
}

TEST_CASE("surface presets") {
  CHECK(Surface::torus().display_name() == "torus");
  CHECK(Surface::closed(2).display_name() == "closed genus 2");
  CHECK(Surface::punctured(1).display_name() == "punctured genus 1");
  CHECK(Surface::torus().caveat().empty());
  CHECK_FALSE(Surface::closed(0).caveat().empty());
  CHECK_FALSE(Surface::punctured(0).caveat().empty());
}
