#include "cehom/weighted_linear.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

namespace cehom {

namespace {

std::string bidegree_str(const Bidegree& b) {
  return "(weight=" + std::to_string(b.weight) + ", degree=" + std::to_string(b.internal_degree) +
         ", length=" + std::to_string(b.word_length) + ")";
}

void parallel_for(std::size_t n, bool parallel, const std::function<void(std::size_t)>& fn);

}  // namespace

BasedSpace::BasedSpace(std::vector<std::pair<std::string, Bidegree>> basis) {
  labels_.reserve(basis.size());
  degrees_.reserve(basis.size());
  for (auto& [label, degree] : basis) {
    if (!index_.emplace(label, labels_.size()).second)
      throw ValidationError("duplicate basis label: " + label);
    labels_.push_back(std::move(label));
    degrees_.push_back(degree);
  }
}

std::optional<std::size_t> BasedSpace::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool BasedSpace::operator==(const BasedSpace& other) const {
  return labels_ == other.labels_ && degrees_ == other.degrees_;
}

SparseMap::SparseMap(BasedSpace domain, BasedSpace codomain,
                     const std::vector<LabeledEntry>& entries, const Field& field,
                     std::optional<GradingDelta> contract)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  entries_.reserve(entries.size());
  for (const auto& e : entries) {
    auto row = codomain_.index_of(e.row);
    if (!row) throw ValidationError("unknown codomain label: " + e.row);
    auto col = domain_.index_of(e.col);
    if (!col) throw ValidationError("unknown domain label: " + e.col);
    entries_.push_back({*row, *col, e.value});
  }
  validate(field, contract);
}

SparseMap SparseMap::from_indexed(BasedSpace domain, BasedSpace codomain,
                                  std::vector<Entry> entries, const Field& field,
                                  std::optional<GradingDelta> contract) {
  SparseMap m;
  m.domain_ = std::move(domain);
  m.codomain_ = std::move(codomain);
  m.entries_ = std::move(entries);
  m.validate(field, contract);
  return m;
}

void SparseMap::validate(const Field& field, const std::optional<GradingDelta>& contract) const {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : entries_) {
    if (e.row >= codomain_.dim() || e.col >= domain_.dim())
      throw ValidationError("sparse entry out of range");
    if (!seen.emplace(e.row, e.col).second)
      throw ValidationError("duplicate sparse entry at (" + codomain_.label(e.row) + ", " +
                            domain_.label(e.col) + ")");
    if (field.is_zero(e.value))
      throw ValidationError("zero scalar stored at (" + codomain_.label(e.row) + ", " +
                            domain_.label(e.col) + ")");
    if (contract) {
      const Bidegree& src = domain_.bidegree(e.col);
      const Bidegree& dst = codomain_.bidegree(e.row);
      Bidegree expect{src.weight + contract->weight,
                      src.internal_degree + contract->internal_degree,
                      src.word_length + contract->word_length};
      if (dst != expect)
        throw ValidationError("grading contract violated: " + domain_.label(e.col) + " " +
                              bidegree_str(src) + " -> " + codomain_.label(e.row) + " " +
                              bidegree_str(dst));
    }
  }
}

namespace {

// --- rank over F_p: sparse row echelon with canonical residues ------------

using ModRow = std::vector<std::pair<std::size_t, std::uint64_t>>;  // sorted by column

ModRow mod_row_axpy(const ModRow& a, std::uint64_t factor, const ModRow& b, std::uint64_t p) {
  // a - factor * b, merged by column.
  ModRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      std::uint64_t v = (p - (factor * b[j].second) % p) % p;
      if (v != 0) out.push_back({b[j].first, v});
      ++j;
    } else {
      std::uint64_t v = (a[i].second + p - (factor * b[j].second) % p) % p;
      if (v != 0) out.push_back({a[i].first, v});
      ++i, ++j;
    }
  }
  return out;
}

std::uint64_t mod_pow_inverse(std::uint64_t a, std::uint64_t p) {
  // Fermat inverse; p prime, a in [1, p).
  std::uint64_t r = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r;
}

long rank_mod_p(std::vector<ModRow> rows, std::size_t ncols, std::uint64_t p) {
  std::map<std::size_t, std::deque<std::size_t>> by_lead;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!rows[r].empty()) by_lead[rows[r].front().first].push_back(r);

  long rk = 0;
  for (std::size_t c = 0; c < ncols; ++c) {
    auto it = by_lead.find(c);
    if (it == by_lead.end()) continue;
    std::deque<std::size_t> bucket = std::move(it->second);
    by_lead.erase(it);
    std::size_t pivot = bucket.front();
    bucket.pop_front();
    ++rk;
    std::uint64_t inv = mod_pow_inverse(rows[pivot].front().second, p);
    for (std::size_t r : bucket) {
      std::uint64_t factor = (rows[r].front().second * inv) % p;
      rows[r] = mod_row_axpy(rows[r], factor, rows[pivot], p);
      if (!rows[r].empty()) by_lead[rows[r].front().first].push_back(r);
    }
  }
  return rk;
}

// --- rank over Q: clear denominators, then fraction-free elimination ------

using IntRow = std::vector<std::pair<std::size_t, BigInt>>;  // sorted by column

const BigInt* row_at(const IntRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  if (it == row.end() || it->first != col) return nullptr;
  return &it->second;
}

// Bareiss step (piv * a - a_c * pivrow) / prev; divisions are exact.
IntRow bareiss_combine(const IntRow& a, const BigInt& piv, const BigInt& a_c,
                       const IntRow& pivrow, const BigInt& prev) {
  IntRow out;
  out.reserve(a.size() + pivrow.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < pivrow.size()) {
    std::size_t col;
    BigInt v;
    if (j == pivrow.size() || (i < a.size() && a[i].first < pivrow[j].first)) {
      col = a[i].first;
      v = piv * a[i].second;
      ++i;
    } else if (i == a.size() || pivrow[j].first < a[i].first) {
      col = pivrow[j].first;
      v = -a_c * pivrow[j].second;
      ++j;
    } else {
      col = a[i].first;
      v = piv * a[i].second - a_c * pivrow[j].second;
      ++i, ++j;
    }
    if (!v.is_zero()) {
      BigInt q, r;
      boost::multiprecision::divide_qr(v, prev, q, r);
      if (!r.is_zero()) throw CheckFailure("fraction-free elimination: inexact division");
      out.push_back({col, std::move(q)});
    }
  }
  return out;
}

long rank_rational(std::vector<IntRow> rows, std::size_t ncols) {
  std::vector<std::size_t> active;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!rows[r].empty()) active.push_back(r);

  BigInt prev = 1;
  long rk = 0;
  for (std::size_t c = 0; c < ncols && !active.empty(); ++c) {
    // First active row (in order) with a leading entry in this column.
    std::size_t pivot_pos = active.size();
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (rows[active[k]].front().first == c) {
        pivot_pos = k;
        break;
      }
    }
    if (pivot_pos == active.size()) continue;
    std::size_t pivot = active[pivot_pos];
    active.erase(active.begin() + static_cast<long>(pivot_pos));
    BigInt piv = rows[pivot].front().second;
    ++rk;

    std::vector<std::size_t> next;
    next.reserve(active.size());
    for (std::size_t r : active) {
      const BigInt* a_c = row_at(rows[r], c);
      rows[r] = bareiss_combine(rows[r], piv, a_c ? *a_c : BigInt(0), rows[pivot], prev);
      if (!rows[r].empty()) next.push_back(r);
    }
    active = std::move(next);
    prev = piv;
  }
  return rk;
}

long rank_entries(std::size_t nrows, std::size_t ncols,
                  const std::vector<SparseMap::Entry>& entries, const Field& field) {
  if (entries.empty()) return 0;
  if (field.is_prime_field()) {
    std::vector<ModRow> rows(nrows);
    for (const auto& e : entries) rows[e.row].push_back({e.col, e.value.residue()});
    for (auto& r : rows) std::sort(r.begin(), r.end());
    return rank_mod_p(std::move(rows), ncols, field.characteristic());
  }
  std::vector<std::vector<std::pair<std::size_t, BigRational>>> qrows(nrows);
  for (const auto& e : entries) qrows[e.row].push_back({e.col, e.value.rational()});
  std::vector<IntRow> rows(nrows);
  for (std::size_t r = 0; r < nrows; ++r) {
    if (qrows[r].empty()) continue;
    std::sort(qrows[r].begin(), qrows[r].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt lcm = 1;
    for (const auto& [c, q] : qrows[r])
      lcm = boost::multiprecision::lcm(lcm, BigInt(boost::multiprecision::denominator(q)));
    for (const auto& [c, q] : qrows[r]) {
      BigInt v = boost::multiprecision::numerator(q) *
                 (lcm / BigInt(boost::multiprecision::denominator(q)));
      rows[r].push_back({c, std::move(v)});
    }
  }
  return rank_rational(std::move(rows), ncols);
}

void parallel_for(std::size_t n, bool parallel, const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = parallel ? std::min<std::size_t>(hw ? hw : 1, n) : 1;
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t tid = 0; tid < nthreads; ++tid) {
    pool.emplace_back([&, tid] {
      try {
        for (std::size_t i = tid; i < n; i += nthreads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

long rank(const SparseMap& map, const Field& field) {
  return rank_entries(map.codomain().dim(), map.domain().dim(), map.entries(), field);
}

void DimensionTable::add(int weight, int s, int t, long dim) {
  auto key = std::make_tuple(weight, s, t);
  long v = (by_bidegree_.count(key) ? by_bidegree_[key] : 0) + dim;
  if (v < 0)
    throw CheckFailure("negative dimension at weight " + std::to_string(weight) + ", (s,t)=(" +
                       std::to_string(s) + "," + std::to_string(t) + ")");
  if (v == 0)
    by_bidegree_.erase(key);
  else
    by_bidegree_[key] = v;
}

long DimensionTable::at_bidegree(int weight, int s, int t) const {
  auto it = by_bidegree_.find(std::make_tuple(weight, s, t));
  return it == by_bidegree_.end() ? 0 : it->second;
}

long DimensionTable::at_total(int weight, int total_degree) const {
  long sum = 0;
  for (const auto& [key, dim] : by_bidegree_) {
    auto [w, s, t] = key;
    if (w == weight && s + t == total_degree) sum += dim;
  }
  return sum;
}

std::map<int, long> DimensionTable::totals(int weight) const {
  std::map<int, long> out;
  for (const auto& [key, dim] : by_bidegree_) {
    auto [w, s, t] = key;
    if (w == weight) out[s + t] += dim;
  }
  return out;
}

std::map<std::pair<int, int>, long> DimensionTable::bidegrees(int weight) const {
  std::map<std::pair<int, int>, long> out;
  for (const auto& [key, dim] : by_bidegree_) {
    auto [w, s, t] = key;
    if (w == weight) out[{s, t}] = dim;
  }
  return out;
}

std::vector<int> DimensionTable::weights() const {
  std::set<int> ws;
  for (const auto& [key, dim] : by_bidegree_) ws.insert(std::get<0>(key));
  return {ws.begin(), ws.end()};
}

long DimensionTable::total_dimension(int weight) const {
  long sum = 0;
  for (const auto& [key, dim] : by_bidegree_)
    if (std::get<0>(key) == weight) sum += dim;
  return sum;
}

DimensionTable DimensionTable::slice(int weight) const {
  DimensionTable out;
  for (const auto& [key, dim] : by_bidegree_)
    if (std::get<0>(key) == weight) out.by_bidegree_[key] = dim;
  return out;
}

namespace {

void validate_chain(const ChainComplex& complex) {
  if (complex.spaces.empty()) throw ValidationError("chain complex has no spaces");
  if (complex.boundaries.size() + 1 != complex.spaces.size())
    throw ValidationError("chain complex needs one boundary per adjacent pair of spaces");
  for (std::size_t l = 0; l < complex.spaces.size(); ++l) {
    for (std::size_t i = 0; i < complex.spaces[l].dim(); ++i) {
      if (complex.spaces[l].bidegree(i).word_length != static_cast<int>(l))
        throw ValidationError("basis label " + complex.spaces[l].label(i) +
                              " has word length inconsistent with its chain level " +
                              std::to_string(l));
    }
  }
  for (std::size_t l = 0; l < complex.boundaries.size(); ++l) {
    if (!(complex.boundaries[l].domain() == complex.spaces[l + 1]) ||
        !(complex.boundaries[l].codomain() == complex.spaces[l]))
      throw ValidationError("boundary " + std::to_string(l + 1) +
                            " does not match the adjacent chain groups");
  }
}

void check_squares_to_zero(const ChainComplex& complex, const Field& field) {
  for (std::size_t l = 0; l + 1 < complex.boundaries.size(); ++l) {
    const SparseMap& outer = complex.boundaries[l];      // C_{l+1} -> C_l
    const SparseMap& inner = complex.boundaries[l + 1];  // C_{l+2} -> C_{l+1}
    std::map<std::size_t, std::vector<const SparseMap::Entry*>> outer_by_col;
    for (const auto& e : outer.entries()) outer_by_col[e.col].push_back(&e);
    std::map<std::pair<std::size_t, std::size_t>, Scalar> product;
    for (const auto& e2 : inner.entries()) {
      auto it = outer_by_col.find(e2.row);
      if (it == outer_by_col.end()) continue;
      for (const auto* e1 : it->second) {
        auto key = std::make_pair(e1->row, e2.col);
        auto ins = product.emplace(key, field.zero());
        ins.first->second = field.add(ins.first->second, field.mul(e1->value, e2.value));
      }
    }
    for (const auto& [key, v] : product) {
      if (field.is_zero(v)) continue;
      const Bidegree& b = inner.domain().bidegree(key.second);
      throw CheckFailure("boundary does not square to zero: first violation at weight " +
                         std::to_string(b.weight) + ", t=" + std::to_string(b.t()) +
                         ", word length " + std::to_string(l + 2) + " (monomial " +
                         inner.domain().label(key.second) + ")");
    }
  }
}

}  // namespace

std::map<std::tuple<int, int, int>, long> chain_dimensions(const ChainComplex& complex) {
  std::map<std::tuple<int, int, int>, long> out;
  for (std::size_t l = 0; l < complex.spaces.size(); ++l) {
    for (std::size_t i = 0; i < complex.spaces[l].dim(); ++i) {
      const Bidegree& b = complex.spaces[l].bidegree(i);
      out[{b.weight, b.t(), static_cast<int>(l)}] += 1;
    }
  }
  return out;
}

DimensionTable homology_dims(const ChainComplex& complex, const Field& field, bool parallel) {
  validate_chain(complex);
  check_squares_to_zero(complex, field);

  // Split every level into (weight, t) blocks; boundaries stay within them.
  using BlockKey = std::pair<int, int>;
  std::size_t levels = complex.spaces.size();
  std::map<BlockKey, std::vector<std::vector<std::size_t>>> block_cols;  // key -> per-level indices
  for (std::size_t l = 0; l < levels; ++l) {
    for (std::size_t i = 0; i < complex.spaces[l].dim(); ++i) {
      const Bidegree& b = complex.spaces[l].bidegree(i);
      auto& per_level = block_cols[{b.weight, b.t()}];
      per_level.resize(levels);
      per_level[l].push_back(i);
    }
  }
  for (auto& [key, per_level] : block_cols) per_level.resize(levels);

  struct Job {
    BlockKey key;
    std::size_t boundary;  // rank of boundaries[boundary] restricted to the block
  };
  std::vector<Job> jobs;
  for (const auto& [key, per_level] : block_cols)
    for (std::size_t b = 0; b < complex.boundaries.size(); ++b) jobs.push_back({key, b});

  std::vector<long> ranks(jobs.size(), 0);
  parallel_for(jobs.size(), parallel, [&](std::size_t j) {
    const auto& [key, bi] = jobs[j];
    const auto& per_level = block_cols.at(key);
    const std::vector<std::size_t>& cols = per_level[bi + 1];
    const std::vector<std::size_t>& rows = per_level[bi];
    if (cols.empty() || rows.empty()) return;
    std::map<std::size_t, std::size_t> col_pos, row_pos;
    for (std::size_t k = 0; k < cols.size(); ++k) col_pos[cols[k]] = k;
    for (std::size_t k = 0; k < rows.size(); ++k) row_pos[rows[k]] = k;
    std::vector<SparseMap::Entry> sub;
    for (const auto& e : complex.boundaries[bi].entries()) {
      auto c = col_pos.find(e.col);
      if (c == col_pos.end()) continue;
      auto r = row_pos.find(e.row);
      if (r == row_pos.end())
        throw CheckFailure("boundary entry leaves its (weight, t) block");
      sub.push_back({r->second, c->second, e.value});
    }
    ranks[j] = rank_entries(rows.size(), cols.size(), sub, field);
  });

  std::map<std::pair<BlockKey, std::size_t>, long> rank_of;
  for (std::size_t j = 0; j < jobs.size(); ++j) rank_of[{jobs[j].key, jobs[j].boundary}] = ranks[j];

  DimensionTable table;
  for (const auto& [key, per_level] : block_cols) {
    for (std::size_t l = 0; l < levels; ++l) {
      long dim = static_cast<long>(per_level[l].size());
      if (dim == 0) continue;
      long incoming = 0, outgoing = 0;
      if (l < complex.boundaries.size()) {
        auto it = rank_of.find({key, l});  // boundaries[l]: C_{l+1} -> C_l
        if (it != rank_of.end()) incoming = it->second;
      }
      if (l >= 1) {
        auto it = rank_of.find({key, l - 1});  // boundaries[l-1]: C_l -> C_{l-1}
        if (it != rank_of.end()) outgoing = it->second;
      }
      long h = dim - incoming - outgoing;
      if (h != 0) table.add(key.first, static_cast<int>(l) - 1, key.second, h);
    }
  }
  return table;
}

}  // namespace cehom
