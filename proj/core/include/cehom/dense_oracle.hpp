#pragma once

#include "cehom/weighted_linear.hpp"

namespace cehom::oracle {

// Reference implementations used to cross-check the production elimination.
// Both are deliberately naive: a dense Gauss-Jordan over the field's own
// arithmetic and a homology count built directly on it, sharing no code
// with the sparse/fraction-free paths they validate.
long dense_rank(const SparseMap& map, const Field& field);

DimensionTable homology_dims_dense(const ChainComplex& complex, const Field& field);

}  // namespace cehom::oracle
