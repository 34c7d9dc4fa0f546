#include "cehom/shifted_lie.hpp"

#include <algorithm>
#include <tuple>

namespace cehom {

BracketWord BracketWord::leaf(std::string generator_name) {
  BracketWord w;
  w.name_ = std::move(generator_name);
  return w;
}

BracketWord BracketWord::bracket(BracketWord lhs, BracketWord rhs) {
  BracketWord w;
  w.node_ = std::make_shared<const Node>(Node{std::move(lhs), std::move(rhs)});
  return w;
}

const std::string& BracketWord::generator_name() const {
  if (!is_leaf()) throw ValidationError("bracket word is not a leaf");
  return name_;
}

const BracketWord& BracketWord::lhs() const {
  if (is_leaf()) throw ValidationError("bracket word is a leaf");
  return node_->lhs;
}

const BracketWord& BracketWord::rhs() const {
  if (is_leaf()) throw ValidationError("bracket word is a leaf");
  return node_->rhs;
}

std::string BracketWord::to_string() const {
  if (is_leaf()) return name_;
  return "[" + node_->lhs.to_string() + "," + node_->rhs.to_string() + "]";
}

namespace {

int parity_sign(long long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

void add_term(std::map<std::size_t, Scalar>& acc, std::size_t idx, const Scalar& c,
              const Field& f) {
  auto it = acc.emplace(idx, f.zero()).first;
  it->second = f.add(it->second, c);
  if (f.is_zero(it->second)) acc.erase(it);
}

}  // namespace

LieBasis::LieBasis(std::vector<Generator> gens, int w_max, const Field& field, CharMode mode)
    : gens_(std::move(gens)), field_(field), mode_(mode), w_max_(w_max) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const Generator& g = gens_[i];
    if (g.name.empty()) throw ValidationError("generator with empty name");
    if (g.weight < 1) throw ValidationError("generator weight must be positive: " + g.name);
    if (!gen_index_.emplace(g.name, i).second)
      throw ValidationError("duplicate generator name: " + g.name);
  }
}

const std::vector<LieBasis::NormalForm>& LieBasis::basis(int weight) const {
  if (weight < 1 || weight > w_max_)
    throw ValidationError("weight " + std::to_string(weight) + " outside [1, " +
                          std::to_string(w_max_) + "]");
  return levels_[static_cast<std::size_t>(weight - 1)].normal;
}

int LieBasis::word_weight(const BracketWord& word) const {
  if (word.is_leaf()) {
    auto it = gen_index_.find(word.generator_name());
    if (it == gen_index_.end())
      throw ValidationError("unknown generator: " + word.generator_name());
    return gens_[it->second].weight;
  }
  return word_weight(word.lhs()) + word_weight(word.rhs());
}

int LieBasis::word_degree(const BracketWord& word) const {
  if (word.is_leaf()) {
    auto it = gen_index_.find(word.generator_name());
    if (it == gen_index_.end())
      throw ValidationError("unknown generator: " + word.generator_name());
    return gens_[it->second].degree;
  }
  return word_degree(word.lhs()) + word_degree(word.rhs()) - 1;
}

LieBasis::Combo LieBasis::combo_of(int weight, std::size_t index) const {
  if (index >= dim(weight)) throw ValidationError("normal form index out of range");
  return Combo{weight, {{index, field_.one()}}};
}

LieBasis::Combo LieBasis::normalize(const BracketWord& word) const {
  int w = word_weight(word);
  if (w > w_max_)
    throw ValidationError("weight overflow: word of weight " + std::to_string(w) +
                          " exceeds the configured maximum " + std::to_string(w_max_));
  if (word.is_leaf()) {
    const Level& level = levels_[static_cast<std::size_t>(w - 1)];
    return level.reduce[level.by_generator.at(word.generator_name())];
  }
  return bracket(normalize(word.lhs()), normalize(word.rhs()));
}

LieBasis::Combo LieBasis::bracket(const Combo& a, const Combo& b) const {
  int w = a.weight + b.weight;
  if (w > w_max_)
    throw ValidationError("weight overflow: bracket lands at weight " + std::to_string(w) +
                          ", maximum is " + std::to_string(w_max_));
  const Level& level = levels_[static_cast<std::size_t>(w - 1)];
  SpanCombo span = bracket_to_span(a, b, level);
  std::map<std::size_t, Scalar> acc;
  for (const auto& [si, c] : span)
    for (const auto& [ni, rc] : level.reduce[si].terms) add_term(acc, ni, field_.mul(c, rc), field_);
  Combo out{w, {acc.begin(), acc.end()}};
  return out;
}

LieBasis::SpanCombo LieBasis::bracket_to_span(const Combo& a, const Combo& b,
                                              const Level& level) const {
  SpanCombo acc;
  const auto& na = basis(a.weight);
  const auto& nb = basis(b.weight);
  for (const auto& [ia, ca] : a.terms) {
    for (const auto& [ib, cb] : b.terms) {
      Scalar coeff = field_.mul(ca, cb);
      Ref left{a.weight, ia}, right{b.weight, ib};
      if (a.weight > b.weight) {
        // [u,v] = (-1)^{|u||v|} [v,u]; keep the lighter argument on the left.
        std::swap(left, right);
        if (parity_sign(static_cast<long long>(na[ia].degree) * nb[ib].degree) < 0)
          coeff = field_.negate(coeff);
      }
      add_term(acc, level.by_pair.at({left, right}), coeff, field_);
    }
  }
  return acc;
}

LieBasis::Combo LieBasis::jacobi_defect(const Combo& u, const Combo& v, const Combo& w) const {
  // (-1)^{|u||w|}[u,[v,w]] + (-1)^{|v||u|}[v,[w,u]] + (-1)^{|w||v|}[w,[u,v]]
  auto degree_of = [&](const Combo& c) {
    return c.terms.empty() ? 0 : basis(c.weight)[c.terms.front().first].degree;
  };
  int du = degree_of(u), dv = degree_of(v), dw = degree_of(w);
  int total = u.weight + v.weight + w.weight;
  std::map<std::size_t, Scalar> acc;
  auto accumulate = [&](int sign, const Combo& c) {
    for (const auto& [i, s] : c.terms)
      add_term(acc, i, sign < 0 ? field_.negate(s) : s, field_);
  };
  accumulate(parity_sign(static_cast<long long>(du) * dw), bracket(u, bracket(v, w)));
  accumulate(parity_sign(static_cast<long long>(dv) * du), bracket(v, bracket(w, u)));
  accumulate(parity_sign(static_cast<long long>(dw) * dv), bracket(w, bracket(u, v)));
  return Combo{total, {acc.begin(), acc.end()}};
}

void LieBasis::build_level(int weight) {
  Level level;

  // Spanning set: atoms of this weight, then brackets [u,v] of lower-weight
  // normal forms with wt(u) <= wt(v) (both orders when the weights tie).
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    if (gens_[g].weight != weight) continue;
    level.span.push_back(SpanTree{g, {}, {}, gens_[g].degree, gens_[g].name});
  }
  for (int w1 = 1; w1 <= weight - w1; ++w1) {
    int w2 = weight - w1;
    const auto& left = basis(w1);
    const auto& right = basis(w2);
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = 0; j < right.size(); ++j) {
        SpanTree tree;
        tree.lhs = Ref{w1, i};
        tree.rhs = Ref{w2, j};
        tree.degree = left[i].degree + right[j].degree - 1;
        tree.label = "[" + left[i].label + "," + right[j].label + "]";
        level.span.push_back(std::move(tree));
      }
    }
  }
  std::sort(level.span.begin(), level.span.end(), [](const SpanTree& a, const SpanTree& b) {
    return std::tie(a.degree, a.label) < std::tie(b.degree, b.label);
  });
  for (std::size_t s = 0; s < level.span.size(); ++s) {
    const SpanTree& tree = level.span[s];
    if (tree.generator)
      level.by_generator[tree.label] = s;
    else
      level.by_pair[{tree.lhs, tree.rhs}] = s;
  }
  levels_.push_back(std::move(level));
  Level& lv = levels_.back();

  // Relation instances, as vectors over the spanning set.
  std::vector<SpanCombo> relations;

  if (weight % 2 == 0) {
    // Graded symmetry [u,v] = (-1)^{|u||v|}[v,u] on equal-weight pairs.
    int half = weight / 2;
    const auto& nf = basis(half);
    for (std::size_t i = 0; i < nf.size(); ++i) {
      for (std::size_t j = i; j < nf.size(); ++j) {
        SpanCombo rel;
        int sign = parity_sign(static_cast<long long>(nf[i].degree) * nf[j].degree);
        if (i == j) {
          if (sign > 0) continue;  // even square: no constraint
          add_term(rel, lv.by_pair.at({Ref{half, i}, Ref{half, i}}), field_.from_integer(2),
                   field_);
        } else {
          add_term(rel, lv.by_pair.at({Ref{half, i}, Ref{half, j}}), field_.one(), field_);
          Scalar s = sign < 0 ? field_.one() : field_.negate(field_.one());
          add_term(rel, lv.by_pair.at({Ref{half, j}, Ref{half, i}}), s, field_);
        }
        if (!rel.empty()) relations.push_back(std::move(rel));
      }
    }
  }

  // Graded Jacobi on all ordered triples of lower-weight normal forms.
  for (int w1 = 1; w1 <= weight - 2; ++w1) {
    for (int w2 = 1; w1 + w2 <= weight - 1; ++w2) {
      int w3 = weight - w1 - w2;
      if (w3 < 1) continue;
      for (std::size_t i1 = 0; i1 < dim(w1); ++i1) {
        for (std::size_t i2 = 0; i2 < dim(w2); ++i2) {
          for (std::size_t i3 = 0; i3 < dim(w3); ++i3) {
            const auto& n1 = basis(w1)[i1];
            const auto& n2 = basis(w2)[i2];
            const auto& n3 = basis(w3)[i3];
            Combo u = combo_of(w1, i1), v = combo_of(w2, i2), z = combo_of(w3, i3);
            SpanCombo rel;
            auto accumulate = [&](int sign, const Combo& a, const Combo& inner) {
              if (inner.is_zero()) return;
              for (auto& [si, c] : bracket_to_span(a, inner, lv))
                add_term(rel, si, sign < 0 ? field_.negate(c) : c, field_);
            };
            accumulate(parity_sign(static_cast<long long>(n1.degree) * n3.degree), u,
                       bracket(v, z));
            accumulate(parity_sign(static_cast<long long>(n2.degree) * n1.degree), v,
                       bracket(z, u));
            accumulate(parity_sign(static_cast<long long>(n3.degree) * n2.degree), z,
                       bracket(u, v));
            if (!rel.empty()) relations.push_back(std::move(rel));
          }
        }
      }
    }
  }

  // Characteristic 3, standard regime: [[x,x],x] = 0.  Instances on even
  // normal forms suffice; mixed polarizations follow from Jacobi.
  if (mode_ == CharMode::Standard && field_.characteristic() == 3 && weight % 3 == 0) {
    int third = weight / 3;
    for (std::size_t i = 0; i < dim(third); ++i) {
      if (basis(third)[i].degree % 2 != 0) continue;  // odd squares vanish already
      Combo e = combo_of(third, i);
      Combo square = bracket(e, e);
      if (square.is_zero()) continue;
      SpanCombo rel = bracket_to_span(square, e, lv);
      if (!rel.empty()) relations.push_back(std::move(rel));
    }
  }

  // Quotient by the relations: incremental reduced row echelon form.
  std::map<std::size_t, SpanCombo> pivots;  // leading span index -> reduced row
  for (SpanCombo rel : relations) {
    for (const auto& [c, row] : pivots) {
      auto it = rel.find(c);
      if (it == rel.end()) continue;
      Scalar factor = it->second;
      for (const auto& [rc, rv] : row) add_term(rel, rc, field_.negate(field_.mul(factor, rv)), field_);
    }
    if (rel.empty()) continue;
    std::size_t lead = rel.begin()->first;
    Scalar inv = field_.invert(rel.begin()->second);
    SpanCombo normalized;
    for (const auto& [c, v] : rel) normalized[c] = field_.mul(v, inv);
    for (auto& [c, row] : pivots) {
      auto it = row.find(lead);
      if (it == row.end()) continue;
      Scalar factor = it->second;
      for (const auto& [rc, rv] : normalized)
        add_term(row, rc, field_.negate(field_.mul(factor, rv)), field_);
    }
    pivots[lead] = std::move(normalized);
  }

  // Free columns become the normal forms, in (degree, label) order.
  std::map<std::size_t, std::size_t> normal_pos;  // span index -> basis position
  for (std::size_t s = 0; s < lv.span.size(); ++s) {
    if (pivots.count(s)) continue;
    const SpanTree& tree = lv.span[s];
    BracketWord word =
        tree.generator
            ? BracketWord::leaf(gens_[*tree.generator].name)
            : BracketWord::bracket(
                  levels_[static_cast<std::size_t>(tree.lhs.weight - 1)].normal[tree.lhs.index].word,
                  levels_[static_cast<std::size_t>(tree.rhs.weight - 1)].normal[tree.rhs.index].word);
    normal_pos[s] = lv.normal.size();
    lv.normal.push_back(NormalForm{std::move(word), tree.degree, tree.label});
    lv.normal_span_index.push_back(s);
  }

  lv.reduce.resize(lv.span.size());
  for (std::size_t s = 0; s < lv.span.size(); ++s) {
    auto pv = pivots.find(s);
    if (pv == pivots.end()) {
      lv.reduce[s] = Combo{weight, {{normal_pos.at(s), field_.one()}}};
      continue;
    }
    Combo combo{weight, {}};
    for (const auto& [c, v] : pv->second) {
      if (c == s) continue;
      combo.terms.push_back({normal_pos.at(c), field_.negate(v)});
    }
    std::sort(combo.terms.begin(), combo.terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    lv.reduce[s] = std::move(combo);
  }
}

LieBasis free_lie_basis(std::vector<Generator> generators, int w_max, const Field& field,
                        CharMode mode) {
  if (w_max < 1) throw ValidationError("maximum weight must be at least 1");
  if (mode == CharMode::OperadicChar3 && field.characteristic() != 3)
    throw ValidationError("the operadic char-3 regime is only meaningful over F_3");
  LieBasis basis(std::move(generators), w_max, field, mode);
  for (int w = 1; w <= w_max; ++w) basis.build_level(w);
  return basis;
}

}  // namespace cehom
