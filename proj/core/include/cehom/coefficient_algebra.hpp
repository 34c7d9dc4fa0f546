#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cehom/scalar.hpp"
#include "cehom/shifted_lie.hpp"

namespace cehom {

/// Koszul sign convention used when bracketing the tensor algebra:
/// [y1 (x) x1, y2 (x) x2] = (-1)^(|x1| * cohdeg(y2)) (y1 u y2) (x) [x1, x2].
inline constexpr const char* kKoszulConventionTag = "(-1)^(|x1|*cohdeg(y2))";

/// Bar bidegree convention: s = word length - 1, t = internal degree - s.
inline constexpr const char* kBidegreeConventionTag = "s=len-1";

/// Finite-dimensional graded-commutative associative algebra with a fixed
/// basis, graded by cohomological degree.  Commutativity and associativity
/// are verified on all basis pairs/triples at construction.
class GradedCommutativeAlgebra {
 public:
  struct BasisElement {
    std::string name;
    int degree = 0;  // cohomological degree, >= 0
  };
  using Product = std::vector<std::pair<std::size_t, Scalar>>;  // sorted by index

  GradedCommutativeAlgebra(std::vector<BasisElement> basis,
                           std::map<std::pair<std::size_t, std::size_t>, Product> products,
                           std::optional<std::size_t> unit, const Field& field);

  std::size_t dim() const { return basis_.size(); }
  const std::string& name(std::size_t i) const { return basis_.at(i).name; }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::optional<std::size_t> unit() const { return unit_; }
  const Field& field() const { return field_; }

  const Product& product(std::size_t i, std::size_t j) const;

 private:
  void validate() const;

  std::vector<BasisElement> basis_;
  std::map<std::pair<std::size_t, std::size_t>, Product> products_;
  std::optional<std::size_t> unit_;
  Field field_;
  Product empty_;
};

enum class SurfaceVariant { Closed, PuncturedCompactified };

/// Cohomology ring of a closed genus-g surface (unital, with classes
/// d, a_1, b_1, ..., a_g, b_g, c and a_i u b_i = c), or the reduced
/// cohomology of a compactified once-punctured genus-g surface (the same
/// without the unit d).
GradedCommutativeAlgebra surface_cohomology(int genus, SurfaceVariant variant,
                                            const Field& field);

/// Basis element y (x) x of (coefficient algebra) tensor (free Lie algebra):
/// degree |x| - cohdeg(y), weight that of x.
class TensorLieAlgebra {
 public:
  struct Element {
    std::string label;      // "y|x"
    int degree = 0;         // |x| - cohdeg(y)
    int weight = 0;
    std::size_t coeff = 0;  // index into the coefficient algebra
    int lie_weight = 0;
    std::size_t lie_index = 0;
    bool even() const { return degree % 2 == 0; }
  };
  using Combo = std::vector<std::pair<std::size_t, Scalar>>;  // sorted by element index

  /// Builds the tensor basis and the full bracket table for argument weights
  /// summing to at most the Lie basis cap, then verifies graded symmetry and
  /// the graded Jacobi identity on all basis pairs/triples in range.
  TensorLieAlgebra(GradedCommutativeAlgebra algebra, LieBasis lie);

  std::size_t dim() const { return elements_.size(); }
  const Element& element(std::size_t i) const { return elements_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  int max_weight() const { return lie_.max_weight(); }
  const Field& field() const { return algebra_.field(); }
  const GradedCommutativeAlgebra& coefficients() const { return algebra_; }
  const LieBasis& lie() const { return lie_; }

  /// Bracket of two basis elements; defined when the weights sum to at most
  /// max_weight().
  const Combo& bracket(std::size_t i, std::size_t j) const;

 private:
  void verify_axioms() const;

  GradedCommutativeAlgebra algebra_;
  LieBasis lie_;
  std::vector<Element> elements_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, Combo> table_;
};

}  // namespace cehom
