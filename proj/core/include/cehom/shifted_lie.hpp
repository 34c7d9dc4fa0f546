#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cehom/scalar.hpp"

namespace cehom {

/// Generator of a free shifted graded Lie algebra.  The bracket lowers
/// internal degree by one ([,]: L_m x L_n -> L_{m+n-1}) and adds weight.
struct Generator {
  std::string name;
  int degree = 0;
  int weight = 1;
};

/// Formal bracket word: a leaf (generator name) or a bracket of two words.
class BracketWord {
 public:
  static BracketWord leaf(std::string generator_name);
  static BracketWord bracket(BracketWord lhs, BracketWord rhs);

  bool is_leaf() const { return !node_; }
  const std::string& generator_name() const;
  const BracketWord& lhs() const;
  const BracketWord& rhs() const;
  std::string to_string() const;

 private:
  BracketWord() = default;
  struct Node;  // defined below; needs the complete class
  std::string name_;
  std::shared_ptr<const Node> node_;
};

struct BracketWord::Node {
  BracketWord lhs;
  BracketWord rhs;
};

/// Relation regime.  Standard imposes graded symmetry, the graded Jacobi
/// identity and, in characteristic 3, [[x,x],x] = 0.  OperadicChar3 keeps
/// only symmetry and Jacobi; it is meaningful over F_3 only, where the two
/// regimes genuinely differ.
enum class CharMode { Standard, OperadicChar3 };

/// Weight-graded basis of a free shifted Lie algebra up to a weight cap,
/// with a normal-form rewriting map.  Construct via free_lie_basis.
class LieBasis {
 public:
  struct NormalForm {
    BracketWord word;
    int degree = 0;
    std::string label;  // serialized word, unique
  };

  /// Weight-homogeneous linear combination of normal forms of `weight`.
  struct Combo {
    int weight = 0;
    std::vector<std::pair<std::size_t, Scalar>> terms;  // (index into basis(weight), coeff)
    bool is_zero() const { return terms.empty(); }
  };

  int max_weight() const { return w_max_; }
  const Field& field() const { return field_; }
  CharMode mode() const { return mode_; }
  const std::vector<Generator>& generators() const { return gens_; }

  std::size_t dim(int weight) const { return basis(weight).size(); }
  const std::vector<NormalForm>& basis(int weight) const;

  /// Rewrites an arbitrary bracket word as a combination of normal forms.
  /// Linear over expansions and idempotent on normal forms.
  Combo normalize(const BracketWord& word) const;

  /// Bracket of two normalized combinations; lands at the sum of weights.
  Combo bracket(const Combo& a, const Combo& b) const;

  Combo combo_of(int weight, std::size_t index) const;
  int word_weight(const BracketWord& word) const;
  int word_degree(const BracketWord& word) const;

  /// Signed cyclic sum of the graded Jacobi identity on degree-homogeneous
  /// combinations; vanishes identically on a valid basis.
  Combo jacobi_defect(const Combo& u, const Combo& v, const Combo& w) const;

 private:
  friend LieBasis free_lie_basis(std::vector<Generator> generators, int w_max,
                                 const Field& field, CharMode mode);
  LieBasis(std::vector<Generator> gens, int w_max, const Field& field, CharMode mode);
  void build_level(int weight);

  struct Ref {
    int weight;
    std::size_t index;  // into normal forms of that weight
    auto operator<=>(const Ref&) const = default;
  };
  struct SpanTree {
    std::optional<std::size_t> generator;  // atom
    Ref lhs{}, rhs{};                      // pair of normal forms, wt(lhs) <= wt(rhs)
    int degree = 0;
    std::string label;
  };
  struct Level {
    std::vector<SpanTree> span;
    std::vector<NormalForm> normal;
    std::vector<std::size_t> normal_span_index;          // normal i -> span index
    std::vector<Combo> reduce;                           // span index -> combo
    std::map<std::pair<Ref, Ref>, std::size_t> by_pair;  // (lhs,rhs) -> span index
    std::map<std::string, std::size_t> by_generator;     // atom name -> span index
  };

  using SpanCombo = std::map<std::size_t, Scalar>;  // span index -> coeff
  SpanCombo bracket_to_span(const Combo& a, const Combo& b, const Level& level) const;

  std::vector<Generator> gens_;
  std::map<std::string, std::size_t> gen_index_;
  Field field_;
  CharMode mode_;
  int w_max_;
  std::vector<Level> levels_;  // levels_[w-1] is weight w
};

/// Builds the free shifted graded Lie algebra on `generators`, weight by
/// weight up to w_max: spanning bracket trees on lower-weight normal forms
/// (left weight <= right weight), quotiented by the relation instances of
/// the chosen regime via Gauss-Jordan elimination, deterministically
/// ordered by (degree, serialized tree).
LieBasis free_lie_basis(std::vector<Generator> generators, int w_max, const Field& field,
                        CharMode mode = CharMode::Standard);

}  // namespace cehom
