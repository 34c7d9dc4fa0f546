#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cehom/coefficient_algebra.hpp"
#include "cehom/weighted_linear.hpp"

namespace cehom {

// A basis monomial of the divided-power/exterior complex attached to a
// weighted tensor Lie algebra: a divided-power part over the even elements
// (pairs of element index and exponent >= 1, sorted by index) and an
// exterior part over the odd elements (sorted indices, no repeats).
struct CEMonomial {
  std::vector<std::pair<std::size_t, int>> even;
  std::vector<std::size_t> odd;

  int word_length() const {
    int len = static_cast<int>(odd.size());
    for (const auto& [idx, exp] : even) {
      (void)idx;
      len += exp;
    }
    return len;
  }

  auto operator<=>(const CEMonomial&) const = default;
};

struct CEOptions {
  // Deliberately flips one internal sign; used to confirm that the
  // square-zero check actually detects a broken differential.
  bool inject_sign_fault = false;
};

// All monomials of the given total weight, unsorted.
std::vector<CEMonomial> ce_basis(const TensorLieAlgebra& g, int weight);

std::string monomial_label(const TensorLieAlgebra& g, const CEMonomial& m);
int monomial_degree(const TensorLieAlgebra& g, const CEMonomial& m);
int monomial_weight(const TensorLieAlgebra& g, const CEMonomial& m);

// The quadratic boundary of a single monomial, as a monomial -> coefficient map.
std::map<CEMonomial, Scalar> ce_differential(const TensorLieAlgebra& g, const CEMonomial& m,
                                             const CEOptions& options = {});

// Chain complex of a single weight, with level l holding the monomials of
// word length l (level 0 is empty for weight >= 1).
ChainComplex build_ce_complex(const TensorLieAlgebra& g, int weight,
                              const CEOptions& options = {});

DimensionTable ce_homology(const TensorLieAlgebra& g, int weight, const CEOptions& options = {},
                           bool parallel = true);

// ---------------------------------------------------------------------------
// Surface presets and the top-level dimension computations.
// ---------------------------------------------------------------------------

struct Surface {
  enum class Kind { Closed, Punctured, Custom };

  Kind kind = Kind::Closed;
  int genus = 1;
  std::string custom_json;  // coefficient algebra description, Kind::Custom only

  static Surface torus() { return Surface{Kind::Closed, 1, {}}; }
  static Surface closed(int genus) { return Surface{Kind::Closed, genus, {}}; }
  static Surface punctured(int genus) { return Surface{Kind::Punctured, genus, {}}; }
  static Surface custom(std::string json_text) {
    return Surface{Kind::Custom, 0, std::move(json_text)};
  }

  std::string display_name() const;
  // Non-empty when the preset is outside the range the dimension equalities
  // are designed for (genus 0); callers should surface it verbatim.
  std::string caveat() const;
};

GradedCommutativeAlgebra surface_algebra(const Surface& surface, const Field& field);

TensorLieAlgebra make_tensor_lie(const Surface& surface, const Field& field, int max_weight,
                                 CharMode mode = CharMode::Standard);

// Rational homology dimensions for weights 1..max_weight, merged in one table.
DimensionTable betti_table(const Surface& surface, int max_weight,
                           const CEOptions& options = {});

struct CompareReport {
  std::uint64_t prime = 0;
  int weight = 0;
  DimensionTable rational;
  DimensionTable modp;
  // One row per total degree that occurs: (degree, rational dim, mod-p dim).
  std::vector<std::tuple<int, long, long>> rows;
  bool per_degree_equal = false;
};

// Chain-level comparison of mod-p and rational homology in one weight;
// valid for weight < p only (the boundary weight routes through the
// spectral-sequence ledger instead).
CompareReport compare(const Surface& surface, std::uint64_t p, int weight,
                      const CEOptions& options = {});

}  // namespace cehom
