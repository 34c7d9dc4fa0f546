#pragma once

#include <string>

#include "cehom/coefficient_algebra.hpp"
#include "cehom/weighted_linear.hpp"

namespace cehom {

// One JSON object per weight carrying the per-total-degree dimensions, the
// full (s, t) breakdown and the sign/bidegree conventions; a single weight
// serializes as a bare object, several weights as an array.
std::string dimension_table_to_json(const DimensionTable& table, const std::string& surface,
                                    const std::string& field_name);

// Inverse of dimension_table_to_json, keyed off the (s, t) breakdown.
DimensionTable dimension_table_from_json(const std::string& text);

// Comment line stating the conventions, then `surface,field,weight,degree,dim`
// rows sorted by weight and total degree.
std::string dimension_table_to_csv(const DimensionTable& table, const std::string& surface,
                                   const std::string& field_name);

// Builds a graded-commutative coefficient algebra from a JSON description:
//   {"basis": [{"name": "a1", "degree": 1}, ...],
//    "products": [{"left": "a1", "right": "b1",
//                  "result": [{"name": "c", "coeff": 1}]}, ...],
//    "unit": "d"}                                    // optional
// Coefficients are integers or strings like "-3" or "1/2".  Products may be
// given in one order only; the opposite order is filled in with the graded
// sign, and the result is fully validated.
GradedCommutativeAlgebra algebra_from_json(const std::string& text, const Field& field);

}  // namespace cehom
