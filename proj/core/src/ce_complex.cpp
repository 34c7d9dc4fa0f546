#include "cehom/ce_complex.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include "cehom/errors.hpp"
#include "cehom/json_io.hpp"

namespace cehom {

namespace {

using Terms = std::map<CEMonomial, Scalar>;

int parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

void add_term(Terms& acc, const CEMonomial& m, const Scalar& c, const Field& f) {
  if (f.is_zero(c)) return;
  auto it = acc.emplace(m, f.zero()).first;
  it->second = f.add(it->second, c);
  if (f.is_zero(it->second)) acc.erase(it);
}

// Inserts an odd element at its sorted position, counting the transpositions
// needed to move it there from the front.  Returns nothing when the element
// already occurs (the exterior square vanishes).
std::optional<std::pair<CEMonomial, int>> insert_odd(CEMonomial m, std::size_t z) {
  auto pos = std::lower_bound(m.odd.begin(), m.odd.end(), z);
  if (pos != m.odd.end() && *pos == z) return std::nullopt;
  int passed = static_cast<int>(pos - m.odd.begin());
  m.odd.insert(pos, z);
  return std::make_pair(std::move(m), parity_sign(passed));
}

// Multiplies by the first divided power of an even element; merging into an
// existing exponent k produces the binomial factor k + 1.
std::pair<CEMonomial, long> merge_even(CEMonomial m, std::size_t z) {
  auto pos = std::lower_bound(m.even.begin(), m.even.end(), z,
                              [](const auto& slot, std::size_t v) { return slot.first < v; });
  if (pos != m.even.end() && pos->first == z) {
    pos->second += 1;
    return {std::move(m), pos->second};
  }
  m.even.insert(pos, {z, 1});
  return {std::move(m), 1};
}

// Lowers the exponent of the even slot at `slot`, erasing it at zero.
void lower_exponent(CEMonomial& m, std::size_t slot, int by) {
  m.even[slot].second -= by;
  if (m.even[slot].second == 0) m.even.erase(m.even.begin() + static_cast<std::ptrdiff_t>(slot));
}

void enumerate(const TensorLieAlgebra& g, std::size_t idx, int remaining, CEMonomial& current,
               std::vector<CEMonomial>& out) {
  if (idx == g.dim()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const auto& e = g.element(idx);
  if (e.even()) {
    enumerate(g, idx + 1, remaining, current, out);
    for (int exp = 1; exp * e.weight <= remaining; ++exp) {
      current.even.push_back({idx, exp});
      enumerate(g, idx + 1, remaining - exp * e.weight, current, out);
      current.even.pop_back();
    }
  } else {
    enumerate(g, idx + 1, remaining, current, out);
    if (e.weight <= remaining) {
      current.odd.push_back(idx);
      enumerate(g, idx + 1, remaining - e.weight, current, out);
      current.odd.pop_back();
    }
  }
}

}  // namespace

std::vector<CEMonomial> ce_basis(const TensorLieAlgebra& g, int weight) {
  if (weight < 0) throw ValidationError("weight must be nonnegative");
  std::vector<CEMonomial> out;
  if (weight == 0) return out;
  CEMonomial current;
  enumerate(g, 0, weight, current, out);
  return out;
}

std::string monomial_label(const TensorLieAlgebra& g, const CEMonomial& m) {
  std::string s;
  for (const auto& [idx, exp] : m.even) {
    if (!s.empty()) s += "*";
    s += "g" + std::to_string(exp) + "(" + g.element(idx).label + ")";
  }
  if (!m.odd.empty()) {
    if (!s.empty()) s += "*";
    s += "<";
    for (std::size_t i = 0; i < m.odd.size(); ++i) {
      if (i) s += ",";
      s += g.element(m.odd[i]).label;
    }
    s += ">";
  }
  if (s.empty()) s = "1";
  return s;
}

int monomial_degree(const TensorLieAlgebra& g, const CEMonomial& m) {
  int d = 0;
  for (const auto& [idx, exp] : m.even) d += exp * g.element(idx).degree;
  for (std::size_t idx : m.odd) d += g.element(idx).degree;
  return d;
}

int monomial_weight(const TensorLieAlgebra& g, const CEMonomial& m) {
  int w = 0;
  for (const auto& [idx, exp] : m.even) w += exp * g.element(idx).weight;
  for (std::size_t idx : m.odd) w += g.element(idx).weight;
  return w;
}

std::map<CEMonomial, Scalar> ce_differential(const TensorLieAlgebra& g, const CEMonomial& m,
                                             const CEOptions& options) {
  const Field& f = g.field();
  Terms out;

  // Pairs of distinct divided-power slots.
  for (std::size_t a = 0; a < m.even.size(); ++a) {
    for (std::size_t b = a + 1; b < m.even.size(); ++b) {
      CEMonomial base = m;
      lower_exponent(base, b, 1);
      lower_exponent(base, a, 1);
      for (const auto& [z, c] : g.bracket(m.even[a].first, m.even[b].first)) {
        if (auto placed = insert_odd(base, z)) {
          Scalar v = placed->second < 0 ? f.negate(c) : c;
          add_term(out, placed->first, v, f);
        }
      }
    }
  }

  // Pairs of exterior slots; positions are 1-based in the sorted list.
  for (std::size_t pi = 0; pi < m.odd.size(); ++pi) {
    for (std::size_t pj = pi + 1; pj < m.odd.size(); ++pj) {
      int sign = parity_sign(static_cast<long long>(pi) + static_cast<long long>(pj) + 1);
      // The deliberate fault must not be a uniform rescaling of this term
      // (those leave the square-zero identity intact); conditioning on the
      // divided-power part makes it observable.
      if (options.inject_sign_fault && !m.even.empty()) sign = -sign;
      CEMonomial base = m;
      base.odd.erase(base.odd.begin() + static_cast<std::ptrdiff_t>(pj));
      base.odd.erase(base.odd.begin() + static_cast<std::ptrdiff_t>(pi));
      for (const auto& [z, c] : g.bracket(m.odd[pi], m.odd[pj])) {
        if (auto placed = insert_odd(base, z)) {
          Scalar v = f.mul(c, f.from_integer(static_cast<long long>(sign * placed->second)));
          add_term(out, placed->first, v, f);
        }
      }
    }
  }

  // Self-pairing inside one divided-power slot: gamma_k -> (1/2)[x,x] gamma_{k-2}.
  const Scalar half = f.from_fraction(1, 2);
  for (std::size_t a = 0; a < m.even.size(); ++a) {
    if (m.even[a].second < 2) continue;
    CEMonomial base = m;
    lower_exponent(base, a, 2);
    for (const auto& [z, c] : g.bracket(m.even[a].first, m.even[a].first)) {
      if (auto placed = insert_odd(base, z)) {
        Scalar v = f.mul(half, c);
        if (placed->second < 0) v = f.negate(v);
        add_term(out, placed->first, v, f);
      }
    }
  }

  // Mixed pairs: one divided-power copy against one exterior slot.
  for (std::size_t a = 0; a < m.even.size(); ++a) {
    for (std::size_t pj = 0; pj < m.odd.size(); ++pj) {
      int sign = parity_sign(static_cast<long long>(pj));
      CEMonomial base = m;
      base.odd.erase(base.odd.begin() + static_cast<std::ptrdiff_t>(pj));
      lower_exponent(base, a, 1);
      for (const auto& [z, c] : g.bracket(m.even[a].first, m.odd[pj])) {
        auto [merged, multiplicity] = merge_even(base, z);
        Scalar v = f.mul(c, f.from_integer(sign * multiplicity));
        add_term(out, merged, v, f);
      }
    }
  }

  return out;
}

ChainComplex build_ce_complex(const TensorLieAlgebra& g, int weight, const CEOptions& options) {
  if (weight < 0) throw ValidationError("weight must be nonnegative");
  if (weight > g.max_weight())
    throw ValidationError("weight " + std::to_string(weight) +
                          " exceeds the stored Lie basis range " +
                          std::to_string(g.max_weight()));
  ChainComplex complex;
  if (weight == 0) return complex;

  const Field& f = g.field();
  std::vector<std::vector<CEMonomial>> by_len(static_cast<std::size_t>(weight) + 1);
  for (auto& m : ce_basis(g, weight))
    by_len[static_cast<std::size_t>(m.word_length())].push_back(std::move(m));

  std::vector<std::map<CEMonomial, std::size_t>> locate(by_len.size());
  std::vector<std::vector<CEMonomial>> ordered(by_len.size());
  for (std::size_t l = 0; l < by_len.size(); ++l) {
    std::vector<std::tuple<int, std::string, CEMonomial>> keyed;
    keyed.reserve(by_len[l].size());
    for (auto& m : by_len[l])
      keyed.emplace_back(monomial_degree(g, m), monomial_label(g, m), std::move(m));
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::pair<std::string, Bidegree>> basis;
    basis.reserve(keyed.size());
    for (auto& [d, label, m] : keyed) {
      locate[l].emplace(m, basis.size());
      basis.emplace_back(label, Bidegree{weight, d, static_cast<int>(l)});
      ordered[l].push_back(std::move(m));
    }
    complex.spaces.emplace_back(std::move(basis));
  }

  GradingDelta delta{0, -1, -1};
  for (std::size_t l = 0; l + 1 < complex.spaces.size(); ++l) {
    std::vector<SparseMap::Entry> entries;
    for (std::size_t col = 0; col < ordered[l + 1].size(); ++col) {
      for (const auto& [mono, c] : ce_differential(g, ordered[l + 1][col], options)) {
        auto it = locate[l].find(mono);
        if (it == locate[l].end())
          throw CheckFailure("boundary term " + monomial_label(g, mono) +
                             " is missing from the enumerated basis");
        entries.push_back({it->second, col, c});
      }
    }
    complex.boundaries.push_back(SparseMap::from_indexed(
        complex.spaces[l + 1], complex.spaces[l], std::move(entries), f, delta));
  }
  return complex;
}

DimensionTable ce_homology(const TensorLieAlgebra& g, int weight, const CEOptions& options,
                           bool parallel) {
  if (weight == 0) return {};
  return homology_dims(build_ce_complex(g, weight, options), g.field(), parallel);
}

std::string Surface::display_name() const {
  switch (kind) {
    case Kind::Closed:
      return genus == 1 ? "torus" : "closed genus " + std::to_string(genus);
    case Kind::Punctured:
      return "punctured genus " + std::to_string(genus);
    case Kind::Custom:
      return "custom";
  }
  return "unknown";
}

std::string Surface::caveat() const {
  if (kind != Kind::Custom && genus == 0)
    return "genus 0 lies outside the range the dimension equalities are designed for; "
           "treat these numbers as exploratory";
  return {};
}

GradedCommutativeAlgebra surface_algebra(const Surface& surface, const Field& field) {
  switch (surface.kind) {
    case Surface::Kind::Closed:
      return surface_cohomology(surface.genus, SurfaceVariant::Closed, field);
    case Surface::Kind::Punctured:
      return surface_cohomology(surface.genus, SurfaceVariant::PuncturedCompactified, field);
    case Surface::Kind::Custom:
      return algebra_from_json(surface.custom_json, field);
  }
  throw ValidationError("unknown surface kind");
}

TensorLieAlgebra make_tensor_lie(const Surface& surface, const Field& field, int max_weight,
                                 CharMode mode) {
  LieBasis lie = free_lie_basis({Generator{"x2", 2, 1}}, max_weight, field, mode);
  return TensorLieAlgebra(surface_algebra(surface, field), std::move(lie));
}

DimensionTable betti_table(const Surface& surface, int max_weight, const CEOptions& options) {
  if (max_weight < 1) throw ValidationError("maximum weight must be at least 1");
  Field rationals{FieldSpec::rationals()};
  TensorLieAlgebra g = make_tensor_lie(surface, rationals, max_weight);
  DimensionTable out;
  for (int w = 1; w <= max_weight; ++w) {
    DimensionTable one = ce_homology(g, w, options);
    for (const auto& [key, dim] : one.raw()) {
      const auto& [weight, s, t] = key;
      out.add(weight, s, t, dim);
    }
  }
  return out;
}

CompareReport compare(const Surface& surface, std::uint64_t p, int weight,
                      const CEOptions& options) {
  Field modp{FieldSpec::prime(p)};
  if (weight < 1) throw ValidationError("weight must be at least 1");
  if (static_cast<std::uint64_t>(weight) >= p)
    throw ValidationError("direct chain-level comparison needs weight below the characteristic; "
                          "weight " + std::to_string(weight) + " at p = " + std::to_string(p) +
                          " goes through the spectral-sequence ledger instead");

  CompareReport report;
  report.prime = p;
  report.weight = weight;
  Field rationals{FieldSpec::rationals()};
  report.rational = ce_homology(make_tensor_lie(surface, rationals, weight), weight, options);
  report.modp = ce_homology(make_tensor_lie(surface, modp, weight), weight, options);

  std::set<int> degrees;
  for (const auto& [d, dim] : report.rational.totals(weight)) degrees.insert(d);
  for (const auto& [d, dim] : report.modp.totals(weight)) degrees.insert(d);
  report.per_degree_equal = true;
  for (int d : degrees) {
    long dq = report.rational.at_total(weight, d);
    long dp = report.modp.at_total(weight, d);
    report.rows.emplace_back(d, dq, dp);
    if (dp < dq)
      throw CheckFailure("mod-p homology in degree " + std::to_string(d) +
                         " is smaller than the rational one; this cannot happen for a flat "
                         "integral model and indicates a defect");
    if (dp != dq) report.per_degree_equal = false;
  }
  return report;
}

}  // namespace cehom
