#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cehom/scalar.hpp"

namespace cehom {

/// Weight / internal degree / word length of a basis element.  The bar
/// bidegree is always derived: s = word_length - 1, t = internal_degree - s,
/// so the total degree s + t equals the internal degree.
struct Bidegree {
  int weight = 0;
  int internal_degree = 0;
  int word_length = 0;

  int s() const { return word_length - 1; }
  int t() const { return internal_degree - s(); }
  int total_degree() const { return internal_degree; }
  auto operator<=>(const Bidegree&) const = default;
};

/// Finite ordered basis with unique string labels and a bidegree per label.
class BasedSpace {
 public:
  BasedSpace() = default;
  explicit BasedSpace(std::vector<std::pair<std::string, Bidegree>> basis);

  std::size_t dim() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const Bidegree& bidegree(std::size_t i) const { return degrees_.at(i); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  bool operator==(const BasedSpace& other) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Bidegree> degrees_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Declared bidegree shift of a map; every entry must match it exactly.
struct GradingDelta {
  int weight = 0;
  int internal_degree = 0;
  int word_length = 0;
};

/// Sparse linear map between based spaces.  Rows index the codomain,
/// columns the domain; entries are unique and nonzero.
class SparseMap {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Scalar value;
  };
  struct LabeledEntry {
    std::string row;
    std::string col;
    Scalar value;
  };

  SparseMap(BasedSpace domain, BasedSpace codomain,
            const std::vector<LabeledEntry>& entries, const Field& field,
            std::optional<GradingDelta> contract = std::nullopt);
  static SparseMap from_indexed(BasedSpace domain, BasedSpace codomain,
                                std::vector<Entry> entries, const Field& field,
                                std::optional<GradingDelta> contract = std::nullopt);

  const BasedSpace& domain() const { return domain_; }
  const BasedSpace& codomain() const { return codomain_; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  SparseMap() = default;
  void validate(const Field& field, const std::optional<GradingDelta>& contract) const;

  BasedSpace domain_;
  BasedSpace codomain_;
  std::vector<Entry> entries_;
};

/// Exact rank.  Over F_p: sparse row echelon with canonical residues.
/// Over Q: denominators are cleared per row, then fraction-free
/// (division-controlled) integer elimination bounds entry growth.
/// Pivot order is deterministic: first nonzero in label order.
long rank(const SparseMap& map, const Field& field);

/// Dimensions keyed by (weight, s, t); totals by weight and total degree
/// s + t are derived on demand, never stored separately.
class DimensionTable {
 public:
  void add(int weight, int s, int t, long dim);

  long at_bidegree(int weight, int s, int t) const;
  long at_total(int weight, int total_degree) const;
  std::map<int, long> totals(int weight) const;                    // degree -> dim
  std::map<std::pair<int, int>, long> bidegrees(int weight) const; // (s,t) -> dim
  std::vector<int> weights() const;
  long total_dimension(int weight) const;
  DimensionTable slice(int weight) const;
  bool empty() const { return by_bidegree_.empty(); }

  const std::map<std::tuple<int, int, int>, long>& raw() const { return by_bidegree_; }
  bool operator==(const DimensionTable&) const = default;

 private:
  std::map<std::tuple<int, int, int>, long> by_bidegree_;
};

/// spaces[l] is C_l; boundaries[l] maps C_{l+1} -> C_l.  Every basis label
/// of C_l must carry word_length == l.
struct ChainComplex {
  std::vector<BasedSpace> spaces;
  std::vector<SparseMap> boundaries;
};

/// Checks the chain contract and that consecutive boundaries compose to
/// zero, then reports homology dimensions per (weight, s, t):
/// dim H_l = dim C_l - rank d_l - rank d_{l+1} within each (weight, t)
/// column.  Blocks are independent and run in parallel when requested.
DimensionTable homology_dims(const ChainComplex& complex, const Field& field,
                             bool parallel = true);

/// Chain-group dimensions keyed by (weight, t, l); used for Euler checks.
std::map<std::tuple<int, int, int>, long> chain_dimensions(const ChainComplex& complex);

}  // namespace cehom
