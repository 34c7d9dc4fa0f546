#include "cehom/dense_oracle.hpp"

#include <map>
#include <utility>
#include <vector>

#include "cehom/errors.hpp"

namespace cehom::oracle {

namespace {

using Matrix = std::vector<std::vector<Scalar>>;

long gauss_jordan_rank(Matrix& m, const Field& f) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && f.is_zero(m[pivot][col])) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    Scalar inv = f.invert(m[rank][col]);
    for (std::size_t c = col; c < cols; ++c) m[rank][c] = f.mul(m[rank][c], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || f.is_zero(m[r][col])) continue;
      Scalar factor = m[r][col];
      for (std::size_t c = col; c < cols; ++c)
        m[r][c] = f.sub(m[r][c], f.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return static_cast<long>(rank);
}

// Rank of the map restricted to the given domain columns (all codomain rows).
long restricted_rank(const SparseMap& map, const std::vector<std::size_t>& columns,
                     const Field& f) {
  if (columns.empty() || map.codomain().dim() == 0) return 0;
  std::map<std::size_t, std::size_t> col_slot;
  for (std::size_t i = 0; i < columns.size(); ++i) col_slot.emplace(columns[i], i);
  Matrix m(map.codomain().dim(), std::vector<Scalar>(columns.size(), f.zero()));
  for (const auto& entry : map.entries()) {
    auto it = col_slot.find(entry.col);
    if (it != col_slot.end()) m[entry.row][it->second] = entry.value;
  }
  return gauss_jordan_rank(m, f);
}

}  // namespace

long dense_rank(const SparseMap& map, const Field& field) {
  std::vector<std::size_t> all(map.domain().dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return restricted_rank(map, all, field);
}

DimensionTable homology_dims_dense(const ChainComplex& complex, const Field& field) {
  if (complex.spaces.empty()) return {};
  if (complex.boundaries.size() + 1 != complex.spaces.size())
    throw ValidationError("chain complex needs one boundary per consecutive pair of spaces");

  // Columns of each level, split into the independent (weight, t) strips.
  std::map<std::pair<int, int>, std::map<std::size_t, std::vector<std::size_t>>> strips;
  for (std::size_t l = 0; l < complex.spaces.size(); ++l) {
    for (std::size_t i = 0; i < complex.spaces[l].dim(); ++i) {
      const Bidegree& bd = complex.spaces[l].bidegree(i);
      strips[{bd.weight, bd.t()}][l].push_back(i);
    }
  }

  DimensionTable table;
  for (const auto& [key, levels] : strips) {
    const auto& [weight, t] = key;
    for (const auto& [level, columns] : levels) {
      long outgoing = 0;
      if (level >= 1) outgoing = restricted_rank(complex.boundaries[level - 1], columns, field);
      long incoming = 0;
      if (level < complex.boundaries.size()) {
        auto above = levels.find(level + 1);
        if (above != levels.end())
          incoming = restricted_rank(complex.boundaries[level], above->second, field);
      }
      long dim = static_cast<long>(columns.size()) - outgoing - incoming;
      if (dim < 0)
        throw CheckFailure("negative homology dimension in the reference computation");
      if (dim > 0) {
        int s = static_cast<int>(level) - 1;
        table.add(weight, s, t, dim);
      }
    }
  }
  return table;
}

}  // namespace cehom::oracle
