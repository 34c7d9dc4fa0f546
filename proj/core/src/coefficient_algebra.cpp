#include "cehom/coefficient_algebra.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace cehom {

namespace {

int parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

using Acc = std::map<std::size_t, Scalar>;

void add_term(Acc& acc, std::size_t idx, const Scalar& c, const Field& f) {
  auto it = acc.emplace(idx, f.zero()).first;
  it->second = f.add(it->second, c);
  if (f.is_zero(it->second)) acc.erase(it);
}

std::vector<std::pair<std::size_t, Scalar>> compact(const Acc& acc) {
  return {acc.begin(), acc.end()};
}

}  // namespace

GradedCommutativeAlgebra::GradedCommutativeAlgebra(
    std::vector<BasisElement> basis,
    std::map<std::pair<std::size_t, std::size_t>, Product> products,
    std::optional<std::size_t> unit, const Field& field)
    : basis_(std::move(basis)), products_(std::move(products)), unit_(unit), field_(field) {
  std::set<std::string> names;
  for (const auto& b : basis_) {
    if (b.name.empty()) throw ValidationError("coefficient basis element with empty name");
    if (!names.insert(b.name).second)
      throw ValidationError("duplicate coefficient basis name: " + b.name);
    if (b.degree < 0)
      throw ValidationError("negative cohomological degree for " + b.name);
  }
  for (const auto& [key, result] : products_) {
    if (key.first >= dim() || key.second >= dim())
      throw ValidationError("product entry out of range");
    for (const auto& [z, coeff] : result) {
      if (z >= dim()) throw ValidationError("product result out of range");
      if (field_.is_zero(coeff))
        throw ValidationError("zero coefficient stored in product of " + name(key.first) +
                              " and " + name(key.second));
      if (degree(z) != degree(key.first) + degree(key.second))
        throw ValidationError("product of " + name(key.first) + " and " + name(key.second) +
                              " is not degree-additive");
    }
  }
  // Fill missing opposite orders by graded commutativity.
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (products_.count({i, j}) || !products_.count({j, i})) continue;
      int sign = parity_sign(static_cast<long long>(degree(i)) * degree(j));
      Product flipped;
      for (const auto& [z, coeff] : products_.at({j, i}))
        flipped.push_back({z, sign < 0 ? field_.negate(coeff) : coeff});
      products_[{i, j}] = std::move(flipped);
    }
  }
  if (unit_) {
    if (*unit_ >= dim()) throw ValidationError("unit index out of range");
    if (degree(*unit_) != 0) throw ValidationError("unit must sit in degree 0");
    for (std::size_t j = 0; j < dim(); ++j) {
      Product expected{{j, field_.one()}};
      if (product(*unit_, j) != expected || product(j, *unit_) != expected)
        throw ValidationError("declared unit does not act as identity on " + name(j));
    }
  }
  validate();
}

std::optional<std::size_t> GradedCommutativeAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].name == name) return i;
  return std::nullopt;
}

const GradedCommutativeAlgebra::Product& GradedCommutativeAlgebra::product(std::size_t i,
                                                                           std::size_t j) const {
  auto it = products_.find({i, j});
  return it == products_.end() ? empty_ : it->second;
}

void GradedCommutativeAlgebra::validate() const {
  // Graded commutativity on all pairs.
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      int sign = parity_sign(static_cast<long long>(degree(i)) * degree(j));
      Acc diff;
      for (const auto& [z, c] : product(i, j)) add_term(diff, z, c, field_);
      for (const auto& [z, c] : product(j, i)) {
        Scalar s = sign < 0 ? c : field_.negate(c);
        add_term(diff, z, s, field_);
      }
      if (!diff.empty())
        throw ValidationError("product table is not graded-commutative on (" + name(i) + ", " +
                              name(j) + ")");
    }
  }
  // Associativity on all triples.
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      for (std::size_t k = 0; k < dim(); ++k) {
        Acc diff;
        for (const auto& [z, c] : product(i, j))
          for (const auto& [z2, c2] : product(z, k)) add_term(diff, z2, field_.mul(c, c2), field_);
        for (const auto& [z, c] : product(j, k))
          for (const auto& [z2, c2] : product(i, z))
            add_term(diff, z2, field_.negate(field_.mul(c, c2)), field_);
        if (!diff.empty())
          throw ValidationError("product table is not associative on (" + name(i) + ", " +
                                name(j) + ", " + name(k) + ")");
      }
    }
  }
}

GradedCommutativeAlgebra surface_cohomology(int genus, SurfaceVariant variant,
                                            const Field& field) {
  if (genus < 0) throw ValidationError("genus must be nonnegative");
  std::vector<GradedCommutativeAlgebra::BasisElement> basis;
  std::optional<std::size_t> unit;
  if (variant == SurfaceVariant::Closed) {
    unit = basis.size();
    basis.push_back({"d", 0});
  }
  std::vector<std::size_t> a(genus), b(genus);
  for (int g = 1; g <= genus; ++g) {
    a[g - 1] = basis.size();
    basis.push_back({"a" + std::to_string(g), 1});
    b[g - 1] = basis.size();
    basis.push_back({"b" + std::to_string(g), 1});
  }
  std::size_t c = basis.size();
  basis.push_back({"c", 2});

  std::map<std::pair<std::size_t, std::size_t>, GradedCommutativeAlgebra::Product> products;
  Field f = field;
  for (int g = 0; g < genus; ++g) {
    products[{a[g], b[g]}] = {{c, f.one()}};
    products[{b[g], a[g]}] = {{c, f.negate(f.one())}};
  }
  if (unit) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      products[{*unit, j}] = {{j, f.one()}};
      if (j != *unit) products[{j, *unit}] = {{j, f.one()}};
    }
  }
  return GradedCommutativeAlgebra(std::move(basis), std::move(products), unit, field);
}

TensorLieAlgebra::TensorLieAlgebra(GradedCommutativeAlgebra algebra, LieBasis lie)
    : algebra_(std::move(algebra)), lie_(std::move(lie)) {
  if (!(algebra_.field().spec() == lie_.field().spec()))
    throw ValidationError("coefficient algebra and Lie basis use different fields");

  const Field& f = field();
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> locate;
  for (int lw = 1; lw <= lie_.max_weight(); ++lw) {
    const auto& nfs = lie_.basis(lw);
    for (std::size_t li = 0; li < nfs.size(); ++li) {
      for (std::size_t y = 0; y < algebra_.dim(); ++y) {
        Element e;
        e.label = algebra_.name(y) + "|" + nfs[li].label;
        e.degree = nfs[li].degree - algebra_.degree(y);
        e.weight = lw;
        e.coeff = y;
        e.lie_weight = lw;
        e.lie_index = li;
        locate[{lw, li, y}] = elements_.size();
        index_[e.label] = elements_.size();
        elements_.push_back(std::move(e));
      }
    }
  }

  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      const Element& u = elements_[i];
      const Element& v = elements_[j];
      if (u.weight + v.weight > lie_.max_weight()) continue;
      int lie_deg_u = lie_.basis(u.lie_weight)[u.lie_index].degree;
      int sign = parity_sign(static_cast<long long>(lie_deg_u) * algebra_.degree(v.coeff));
      LieBasis::Combo lie_part = lie_.bracket(lie_.combo_of(u.lie_weight, u.lie_index),
                                              lie_.combo_of(v.lie_weight, v.lie_index));
      Acc acc;
      for (const auto& [z, mu] : algebra_.product(u.coeff, v.coeff)) {
        for (const auto& [m, nu] : lie_part.terms) {
          Scalar coeff = f.mul(mu, nu);
          if (sign < 0) coeff = f.negate(coeff);
          add_term(acc, locate.at({lie_part.weight, m, z}), coeff, f);
        }
      }
      table_[{i, j}] = compact(acc);
    }
  }
  verify_axioms();
}

std::optional<std::size_t> TensorLieAlgebra::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const TensorLieAlgebra::Combo& TensorLieAlgebra::bracket(std::size_t i, std::size_t j) const {
  auto it = table_.find({i, j});
  if (it == table_.end())
    throw ValidationError("bracket of " + element(i).label + " and " + element(j).label +
                          " exceeds the stored weight range");
  return it->second;
}

void TensorLieAlgebra::verify_axioms() const {
  const Field& f = field();
  // Graded symmetry [u,v] = (-1)^{|u||v|}[v,u] in the shifted degrees.
  for (const auto& [key, combo] : table_) {
    auto [i, j] = key;
    int sign = parity_sign(static_cast<long long>(elements_[i].degree) * elements_[j].degree);
    Acc diff;
    for (const auto& [z, c] : combo) add_term(diff, z, c, f);
    for (const auto& [z, c] : table_.at({j, i}))
      add_term(diff, z, sign < 0 ? c : f.negate(c), f);
    if (!diff.empty())
      throw CheckFailure("tensor bracket is not graded-symmetric on (" + elements_[i].label +
                         ", " + elements_[j].label + ")");
  }
  // Graded Jacobi on all triples within the stored weight range.
  auto bracket_with_combo = [&](std::size_t i, const Combo& combo, int sign, Acc& acc) {
    for (const auto& [m, nu] : combo) {
      for (const auto& [z, c] : table_.at({i, m})) {
        Scalar v = f.mul(nu, c);
        add_term(acc, z, sign < 0 ? f.negate(v) : v, f);
      }
    }
  };
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    for (std::size_t j = 0; j < elements_.size(); ++j) {
      for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (elements_[i].weight + elements_[j].weight + elements_[k].weight > lie_.max_weight())
          continue;
        int di = elements_[i].degree, dj = elements_[j].degree, dk = elements_[k].degree;
        Acc acc;
        bracket_with_combo(i, table_.at({j, k}), parity_sign(static_cast<long long>(di) * dk),
                           acc);
        bracket_with_combo(j, table_.at({k, i}), parity_sign(static_cast<long long>(dj) * di),
                           acc);
        bracket_with_combo(k, table_.at({i, j}), parity_sign(static_cast<long long>(dk) * dj),
                           acc);
        if (!acc.empty())
          throw CheckFailure("tensor bracket fails the graded Jacobi identity on (" +
                             elements_[i].label + ", " + elements_[j].label + ", " +
                             elements_[k].label + ")");
      }
    }
  }
}

}  // namespace cehom
