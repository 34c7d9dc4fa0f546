#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cehom/ce_complex.hpp"

namespace cehom {

// A unary-operation class attached to an odd generator of the coefficient
// module: epsilon = 1 applies the Bockstein first.  These sit at word
// filtration s = 1 and only appear at the boundary weight k = p.
struct UnaryClass {
  int epsilon = 0;
  int j = 0;
  std::string label_y;
  std::string base_x;
  int s = 1;
  int t = 0;

  int total_degree() const { return s + t; }
  std::string name() const {
    return (epsilon ? std::string("bQ^") : std::string("Q^")) + std::to_string(j) + "|" +
           label_y + "|" + base_x;
  }
};

// Enumerates the unary-operation classes for the weight-1 generator of
// internal degree x_degree: pairs (epsilon, j) with
// ceil((x_degree - h)/2) <= j < x_degree/2 for each coefficient element of
// cohomological degree h, at t = (x_degree - h) + 2(p-1)j - epsilon - 1.
// Only defined for p >= 5; characteristic 3 has its own bookkeeping.
std::vector<UnaryClass> extra_unary_classes(const GradedCommutativeAlgebra& algebra,
                                            std::uint64_t p, int x_degree = 2);

struct E2Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class TorsionOutcome { Equal, TotalOnly, Mismatch };

struct E2Report {
  std::uint64_t prime = 0;
  int weight = 0;
  DimensionTable ce;                    // mod-p dimensions at the boundary weight
  std::vector<UnaryClass> extras;
  std::pair<int, int> cancel_source{0, 0};  // (s, t) of the chain-level class consumed
  std::pair<int, int> cancel_target{0, 0};  // (s, t) of the class it cancels against
  DimensionTable predicted;             // after adding extras and cancelling
  DimensionTable betti;                 // rational reference at the same weight
  std::vector<E2Check> checks;
  std::string warning;                  // set when only the total dimensions agree
  TorsionOutcome outcome = TorsionOutcome::Mismatch;
};

// Boundary-weight bookkeeping for p >= 5: the two extra unary classes enter
// at (1,-1) and (1,-2), the unique total-degree-zero chain class at
// (p-1, 1-p) cancels the latter, and the result must match the rational
// dimensions.
E2Report e2_weight_p(const Surface& surface, std::uint64_t p, const CEOptions& options = {});

// Characteristic-3 variant at weight 3: one class moves from (2,-2) to
// (1,-1); totals must match the rational dimensions.
E2Report e2_weight_3_char3(const Surface& surface, const CEOptions& options = {});

struct TorsionVerdict {
  std::uint64_t prime = 0;
  int weight = 0;
  TorsionOutcome outcome = TorsionOutcome::Mismatch;
  std::string route;   // "chain-compare", "ledger-p" or "ledger-3"
  std::string detail;
};

// Routes weight < p through the direct chain comparison and weight == p
// through the boundary-weight ledger; weight > p is out of range.
TorsionVerdict torsion_verdict(const Surface& surface, std::uint64_t p, int weight,
                               const CEOptions& options = {});

}  // namespace cehom
