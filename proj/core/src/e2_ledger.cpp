#include "cehom/e2_ledger.hpp"

#include <algorithm>
#include <set>

#include "cehom/errors.hpp"

namespace cehom {

namespace {

int ceil_half(int a) { return a >= 0 ? (a + 1) / 2 : a / 2; }

DimensionTable rational_reference(const Surface& surface, int weight,
                                  const CEOptions& options) {
  Field rationals{FieldSpec::rationals()};
  return ce_homology(make_tensor_lie(surface, rationals, weight), weight, options);
}

void push_check(std::vector<E2Check>& checks, std::string name, bool pass, std::string detail) {
  checks.push_back({std::move(name), pass, std::move(detail)});
}

// Compares predicted and rational dimensions per total degree; fills in the
// outcome, the warning and the trailing checks.
void settle_outcome(E2Report& report) {
  long predicted_total = report.predicted.total_dimension(report.weight);
  long betti_total = report.betti.total_dimension(report.weight);
  push_check(report.checks, "total-dimension", predicted_total == betti_total,
             "predicted " + std::to_string(predicted_total) + ", rational " +
                 std::to_string(betti_total));

  bool no_negative = true;
  for (const auto& [degree, dim] : report.predicted.totals(report.weight))
    if (degree < 0 && dim != 0) no_negative = false;
  push_check(report.checks, "no-negative-total-degree", no_negative,
             no_negative ? "all classes sit in degree >= 0"
                         : "a predicted class survives in negative total degree");

  std::set<int> degrees;
  for (const auto& [d, dim] : report.predicted.totals(report.weight)) degrees.insert(d);
  for (const auto& [d, dim] : report.betti.totals(report.weight)) degrees.insert(d);
  bool per_degree = true;
  std::string mismatch;
  for (int d : degrees) {
    long lhs = report.predicted.at_total(report.weight, d);
    long rhs = report.betti.at_total(report.weight, d);
    if (lhs != rhs) {
      per_degree = false;
      if (mismatch.empty())
        mismatch = "degree " + std::to_string(d) + ": predicted " + std::to_string(lhs) +
                   ", rational " + std::to_string(rhs);
    }
  }
  push_check(report.checks, "per-degree", per_degree,
             per_degree ? "dimensions agree in every total degree" : mismatch);

  bool all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const E2Check& c) { return c.pass; });
  if (all_pass) {
    report.outcome = TorsionOutcome::Equal;
  } else if (!per_degree && predicted_total == betti_total && no_negative) {
    report.outcome = TorsionOutcome::TotalOnly;
    report.warning = "only the total dimensions agree; the per-degree comparison failed (" +
                     mismatch + ")";
  } else {
    report.outcome = TorsionOutcome::Mismatch;
  }
}

}  // namespace

std::vector<UnaryClass> extra_unary_classes(const GradedCommutativeAlgebra& algebra,
                                            std::uint64_t p, int x_degree) {
  if (p < 5)
    throw ValidationError("unary-operation classes are tabulated for characteristic >= 5; "
                          "characteristic 3 uses its own bookkeeping");
  std::vector<UnaryClass> out;
  for (std::size_t y = 0; y < algebra.dim(); ++y) {
    int h = algebra.degree(y);
    int lower = std::max(ceil_half(x_degree - h), 0);
    for (int j = lower; 2 * j < x_degree; ++j) {
      for (int epsilon = 0; epsilon <= 1; ++epsilon) {
        UnaryClass cls;
        cls.epsilon = epsilon;
        cls.j = j;
        cls.label_y = algebra.name(y);
        cls.base_x = "x2";
        cls.s = 1;
        cls.t = (x_degree - h) + 2 * static_cast<int>(p - 1) * j - epsilon - 1;
        out.push_back(std::move(cls));
      }
    }
  }
  return out;
}

E2Report e2_weight_p(const Surface& surface, std::uint64_t p, const CEOptions& options) {
  Field modp{FieldSpec::prime(p)};
  if (p < 5)
    throw ValidationError("the boundary-weight ledger at p = 3 is the characteristic-3 "
                          "variant; use that route");
  const int weight = static_cast<int>(p);

  E2Report report;
  report.prime = p;
  report.weight = weight;
  TensorLieAlgebra g = make_tensor_lie(surface, modp, weight);
  report.ce = ce_homology(g, weight, options);
  report.extras = extra_unary_classes(g.coefficients(), p);
  report.betti = rational_reference(surface, weight, options);
  report.cancel_source = {weight - 1, 1 - weight};
  report.cancel_target = {1, -2};

  long source_dim = report.ce.at_bidegree(weight, weight - 1, 1 - weight);
  long degree_zero_total = report.ce.at_total(weight, 0);
  push_check(report.checks, "unique-boundary-class",
             source_dim == 1 && degree_zero_total == 1,
             "found " + std::to_string(source_dim) + " class(es) at (s,t) = (" +
                 std::to_string(weight - 1) + "," + std::to_string(1 - weight) + ") and " +
                 std::to_string(degree_zero_total) + " class(es) of total degree 0");

  bool target_present = std::any_of(report.extras.begin(), report.extras.end(),
                                    [](const UnaryClass& c) { return c.s == 1 && c.t == -2; });
  push_check(report.checks, "extra-classes",
             report.extras.size() == 2 && target_present,
             std::to_string(report.extras.size()) + " unary class(es) enumerated");

  if (source_dim < 1 || !target_present)
    throw CheckFailure("boundary-weight cancellation is impossible: the class at (s,t) = (" +
                       std::to_string(weight - 1) + "," + std::to_string(1 - weight) +
                       ") or its partner at (1,-2) is missing");

  report.predicted = report.ce;
  for (const UnaryClass& cls : report.extras)
    report.predicted.add(weight, cls.s, cls.t, 1);

  long pre_total = report.predicted.total_dimension(weight);
  long betti_total = report.betti.total_dimension(weight);
  push_check(report.checks, "sum-before-cancellation",
             pre_total == betti_total + 2,
             "with the extra classes: " + std::to_string(pre_total) + " vs rational " +
                 std::to_string(betti_total) + " + 2");

  report.predicted.add(weight, report.cancel_source.first, report.cancel_source.second, -1);
  report.predicted.add(weight, report.cancel_target.first, report.cancel_target.second, -1);

  settle_outcome(report);
  return report;
}

E2Report e2_weight_3_char3(const Surface& surface, const CEOptions& options) {
  const std::uint64_t p = 3;
  const int weight = 3;
  Field f3{FieldSpec::prime(p)};

  E2Report report;
  report.prime = p;
  report.weight = weight;
  report.ce = ce_homology(make_tensor_lie(surface, f3, weight), weight, options);
  report.betti = rational_reference(surface, weight, options);
  report.cancel_source = {2, -2};
  report.cancel_target = {1, -1};

  long source_dim = report.ce.at_bidegree(weight, 2, -2);
  push_check(report.checks, "boundary-class-present", source_dim >= 1,
             "found " + std::to_string(source_dim) + " class(es) at (s,t) = (2,-2)");
  if (source_dim < 1)
    throw CheckFailure("characteristic-3 bookkeeping has no class at (s,t) = (2,-2) to move");

  report.predicted = report.ce;
  report.predicted.add(weight, 2, -2, -1);
  report.predicted.add(weight, 1, -1, 1);

  settle_outcome(report);
  return report;
}

TorsionVerdict torsion_verdict(const Surface& surface, std::uint64_t p, int weight,
                               const CEOptions& options) {
  Field modp{FieldSpec::prime(p)};
  if (weight < 1) throw ValidationError("weight must be at least 1");
  if (static_cast<std::uint64_t>(weight) > p)
    throw ValidationError("weight " + std::to_string(weight) + " exceeds the characteristic " +
                          std::to_string(p) + "; no equality is claimed there");

  TorsionVerdict verdict;
  verdict.prime = p;
  verdict.weight = weight;
  if (static_cast<std::uint64_t>(weight) < p) {
    CompareReport report = compare(surface, p, weight, options);
    verdict.route = "chain-compare";
    if (report.per_degree_equal) {
      verdict.outcome = TorsionOutcome::Equal;
      verdict.detail = "mod-p and rational dimensions agree in every total degree";
    } else {
      long dq = report.rational.total_dimension(weight);
      long dp = report.modp.total_dimension(weight);
      verdict.outcome = dq == dp ? TorsionOutcome::TotalOnly : TorsionOutcome::Mismatch;
      verdict.detail = "per-degree comparison failed (totals " + std::to_string(dp) +
                       " mod p vs " + std::to_string(dq) + " rational)";
    }
    return verdict;
  }

  E2Report report = p == 3 ? e2_weight_3_char3(surface, options) : e2_weight_p(surface, p, options);
  verdict.route = p == 3 ? "ledger-3" : "ledger-p";
  verdict.outcome = report.outcome;
  switch (report.outcome) {
    case TorsionOutcome::Equal:
      verdict.detail = "boundary-weight ledger matches the rational dimensions per degree";
      break;
    case TorsionOutcome::TotalOnly:
      verdict.detail = report.warning;
      break;
    case TorsionOutcome::Mismatch:
      verdict.detail = "boundary-weight ledger does not match the rational dimensions";
      break;
  }
  return verdict;
}

}  // namespace cehom
