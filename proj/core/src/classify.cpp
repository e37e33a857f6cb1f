#include "ccm/classify.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "ccm/construct.hpp"
#include "ccm/correlation.hpp"
#include "ccm/search.hpp"
#include "ccm/symmetry.hpp"

namespace ccm {

namespace {

SymmetryElement element(const PhaseMatrix& m) {
  return SymmetryElement::identity(m.modulus(), m.rows(), m.cols());
}

std::vector<int> mask_bits(unsigned mask, int k) {
  std::vector<int> bits(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) bits[static_cast<std::size_t>(c)] = static_cast<int>((mask >> c) & 1U);
  return bits;
}

PhaseMatrix select_columns(const PhaseMatrix& m, const std::vector<int>& cols) {
  std::vector<Exponent> exps;
  exps.reserve(static_cast<std::size_t>(m.rows()) * cols.size());
  for (int n = 0; n < m.rows(); ++n) {
    for (int c : cols) exps.push_back(static_cast<Exponent>(m.at(n, c)));
  }
  return PhaseMatrix(m.modulus(), m.rows(), static_cast<int>(cols.size()), std::move(exps));
}

bool is_dual_pair_member(const PhaseMatrix& z) {
  const auto [a, b] = dual_pair_split(z);
  return ternary_is_ccm(a) && ternary_is_ccm(b);
}

struct Shape {
  int n1, k1;
};

std::vector<Shape> kronecker_shapes(int n, int k, bool allow_single_row) {
  std::vector<Shape> out;
  for (int n1 = 1; n1 <= n; ++n1) {
    if (n % n1 != 0) continue;
    for (int k1 = 1; k1 <= k; ++k1) {
      if (k % k1 != 0) continue;
      const int n2 = n / n1;
      const int k2 = k / k1;
      if ((n1 == 1 && k1 == 1) || (n2 == 1 && k2 == 1)) continue;
      if (!allow_single_row && (n1 == 1 || n2 == 1)) continue;
      out.push_back({n1, k1});
    }
  }
  return out;
}

std::optional<KroneckerWitness> kronecker_witness(const PhaseMatrix& x, const std::vector<Shape>& shapes,
                                                  const FactorPool& pool) {
  for (const auto& s : shapes) {
    auto f = kronecker_factors(x, s.n1, s.k1);
    if (!f || !is_ccm(f->first) || !is_ccm(f->second)) continue;
    if (!pool.contains(f->first) || !pool.contains(f->second)) continue;
    return KroneckerWitness{x, std::move(f->first), std::move(f->second)};
  }
  return std::nullopt;
}

std::optional<ConcatenationWitness> concatenation_witness(const PhaseMatrix& m, const std::vector<int>& left,
                                                          const std::vector<int>& right, const FactorPool& pool) {
  PhaseMatrix a = select_columns(m, left);
  if (!is_ccm(a)) return std::nullopt;
  PhaseMatrix b = select_columns(m, right);
  if (!is_ccm(b) || !pool.contains(a) || !pool.contains(b)) return std::nullopt;
  std::vector<int> order = left;
  order.insert(order.end(), right.begin(), right.end());
  return ConcatenationWitness{select_columns(m, order), std::move(a), std::move(b)};
}

}  // namespace

void FactorPool::add(const PhaseMatrix& m) {
  classes_[{m.modulus(), m.rows(), m.cols()}].insert(canonical_form(m));
}

void FactorPool::add_shape(int p, int n_rows, int n_cols) {
  auto& set = classes_[{p, n_rows, n_cols}];
  SearchConfig cfg;
  cfg.p = p;
  cfg.n_rows = n_rows;
  cfg.n_cols = n_cols;
  cfg.emit_raw = false;
  for (auto& m : search_ccm(cfg).matrices) set.insert(std::move(m));
}

bool FactorPool::has_shape(int p, int n_rows, int n_cols) const {
  return classes_.contains({p, n_rows, n_cols});
}

bool FactorPool::contains(const PhaseMatrix& m) const {
  auto it = classes_.find({m.modulus(), m.rows(), m.cols()});
  if (it == classes_.end()) {
    throw std::out_of_range("factor pool has no " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                            " classes for p = " + std::to_string(m.modulus()));
  }
  return it->second.contains(canonical_form(m));
}

std::vector<std::pair<int, int>> required_factor_shapes(int n_rows, int n_cols) {
  std::set<std::pair<int, int>> shapes;
  for (int k = 1; k < n_cols; ++k) shapes.insert({n_rows, k});
  for (const auto& s : kronecker_shapes(n_rows, n_cols, true)) {
    shapes.insert({s.n1, s.k1});
    shapes.insert({n_rows / s.n1, n_cols / s.k1});
  }
  return {shapes.begin(), shapes.end()};
}

FactorPool build_factor_pool(int p, int n_rows, int n_cols) {
  FactorPool pool;
  for (const auto& [n, k] : required_factor_shapes(n_rows, n_cols)) pool.add_shape(p, n, k);
  return pool;
}

std::vector<ClassRecord> partition_classes(const std::vector<PhaseMatrix>& matrices) {
  if (matrices.empty()) return {};
  const auto& first = matrices.front();
  std::set<PhaseMatrix> normalized;
  for (const auto& m : matrices) {
    if (m.modulus() != first.modulus() || m.rows() != first.rows() || m.cols() != first.cols()) {
      throw std::invalid_argument("partition_classes: matrices of mixed shape or modulus");
    }
    normalized.insert(normalize(m).matrix);
  }
  std::set<PhaseMatrix> canon;
  for (const auto& m : normalized) canon.insert(canonical_form(m));
  std::vector<ClassRecord> out;
  out.reserve(canon.size());
  for (const auto& c : canon) {
    ClassRecord rec;
    rec.canonical = c;
    rec.orbit_size = orbit_size(c);
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<PhaseMatrix> class_has_hadamard(const PhaseMatrix& m) {
  // Row orthogonality survives S, P, C and Q; only the reversal mask matters.
  SymmetryElement g = element(m);
  for (unsigned t = 0; t < (1U << m.cols()); ++t) {
    g.rev_mask = mask_bits(t, m.cols());
    PhaseMatrix x = apply(g, m);
    if (has_orthogonal_rows(x)) return x;
  }
  return std::nullopt;
}

std::optional<PhaseMatrix> class_has_hadamard_full(const std::vector<PhaseMatrix>& members) {
  for (const auto& x : members) {
    if (has_orthogonal_rows(x)) return x;
  }
  return std::nullopt;
}

std::optional<PhaseMatrix> class_has_dual_pair(const PhaseMatrix& m) {
  if (m.modulus() != 4) throw std::invalid_argument("dual pairs are defined for p = 4 only");
  // S, P, ρ, C_{2W} and Q(-1) preserve the property; C_W with W binary and
  // Q(i)^r are what remain.
  SymmetryElement g = element(m);
  for (int r = 0; r < 2; ++r) {
    g.prog = r;
    for (unsigned w = 0; w < (1U << m.cols()); ++w) {
      g.col_mult = mask_bits(w, m.cols());
      PhaseMatrix x = apply(g, m);
      if (is_dual_pair_member(x)) return x;
    }
  }
  return std::nullopt;
}

std::optional<PhaseMatrix> class_has_dual_pair_full(const std::vector<PhaseMatrix>& members) {
  for (const auto& x : members) {
    if (x.modulus() != 4) throw std::invalid_argument("dual pairs are defined for p = 4 only");
    if (is_dual_pair_member(x)) return x;
  }
  return std::nullopt;
}

std::optional<ConcatenationWitness> class_has_concatenation(const PhaseMatrix& m, const FactorPool& pool) {
  // Whether a set of columns is itself a CCM is invariant under the whole
  // group, so it is enough to try every column subset of m.
  const int k = m.cols();
  for (unsigned mask = 1; mask + 1 < (1U << k); ++mask) {
    if (!(mask & 1U)) continue;
    std::vector<int> left;
    std::vector<int> right;
    for (int c = 0; c < k; ++c) ((mask >> c) & 1U ? left : right).push_back(c);
    if (auto w = concatenation_witness(m, left, right, pool)) return w;
  }
  return std::nullopt;
}

std::optional<ConcatenationWitness> class_has_concatenation_full(const std::vector<PhaseMatrix>& members,
                                                                const FactorPool& pool) {
  for (const auto& x : members) {
    for (int k1 = 1; k1 < x.cols(); ++k1) {
      std::vector<int> left(static_cast<std::size_t>(k1));
      std::vector<int> right(static_cast<std::size_t>(x.cols() - k1));
      std::iota(left.begin(), left.end(), 0);
      std::iota(right.begin(), right.end(), k1);
      if (auto w = concatenation_witness(x, left, right, pool)) return w;
    }
  }
  return std::nullopt;
}

std::optional<std::pair<PhaseMatrix, PhaseMatrix>> kronecker_factors(const PhaseMatrix& m, int n1, int k1) {
  if (n1 < 1 || k1 < 1 || m.rows() % n1 != 0 || m.cols() % k1 != 0) return std::nullopt;
  const int p = m.modulus();
  const int n2 = m.rows() / n1;
  const int k2 = m.cols() / k1;
  std::vector<Exponent> a(static_cast<std::size_t>(n1 * k1));
  std::vector<Exponent> b(static_cast<std::size_t>(n2 * k2));
  for (int r = 0; r < n1; ++r) {
    for (int c = 0; c < k1; ++c) a[static_cast<std::size_t>(r * k1 + c)] = static_cast<Exponent>(m.at(r * n2, c * k2));
  }
  for (int r = 0; r < n2; ++r) {
    for (int c = 0; c < k2; ++c) {
      b[static_cast<std::size_t>(r * k2 + c)] = static_cast<Exponent>(mod_p(m.at(r, c) - m.at(0, 0), p));
    }
  }
  for (int r1 = 0; r1 < n1; ++r1) {
    for (int r2 = 0; r2 < n2; ++r2) {
      for (int c1 = 0; c1 < k1; ++c1) {
        for (int c2 = 0; c2 < k2; ++c2) {
          const int want = mod_p(a[static_cast<std::size_t>(r1 * k1 + c1)] + b[static_cast<std::size_t>(r2 * k2 + c2)], p);
          if (m.at(r1 * n2 + r2, c1 * k2 + c2) != want) return std::nullopt;
        }
      }
    }
  }
  return std::pair{PhaseMatrix(p, n1, k1, std::move(a)), PhaseMatrix(p, n2, k2, std::move(b))};
}

std::optional<KroneckerWitness> class_has_kronecker(const PhaseMatrix& m, const FactorPool& pool,
                                                    bool allow_single_row) {
  const auto shapes = kronecker_shapes(m.rows(), m.cols(), allow_single_row);
  if (shapes.empty()) return std::nullopt;
  // Column-normalized members: S, C and Q keep a product a product, so only
  // the column order and the reversal mask need scanning.
  SymmetryElement g = element(m);
  std::vector<int> perm(static_cast<std::size_t>(m.cols()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    g.perm = perm;
    for (unsigned t = 0; t < (1U << m.cols()); ++t) {
      g.rev_mask = mask_bits(t, m.cols());
      if (auto w = kronecker_witness(normalize_columns(apply(g, m)), shapes, pool)) return w;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

std::optional<KroneckerWitness> class_has_kronecker_full(const std::vector<PhaseMatrix>& members,
                                                         const FactorPool& pool, bool allow_single_row) {
  if (members.empty()) return std::nullopt;
  const auto shapes = kronecker_shapes(members.front().rows(), members.front().cols(), allow_single_row);
  for (const auto& x : members) {
    if (auto w = kronecker_witness(x, shapes, pool)) return w;
  }
  return std::nullopt;
}

void compute_flags(ClassRecord& rec, const FactorPool& pool) {
  const PhaseMatrix& m = rec.canonical;
  rec.hadamard_witness = class_has_hadamard(m);
  rec.has_hadamard = rec.hadamard_witness.has_value();
  if (m.modulus() == 4) {
    rec.dual_pair_witness = class_has_dual_pair(m);
    rec.has_dual_pair = rec.dual_pair_witness.has_value();
  }
  rec.concatenation_witness = class_has_concatenation(m, pool);
  rec.has_concatenation = rec.concatenation_witness.has_value();
  rec.kronecker_witness = class_has_kronecker(m, pool, false);
  rec.has_kronecker = rec.kronecker_witness.has_value();
  rec.kronecker_inclusive_witness = rec.has_kronecker ? rec.kronecker_witness : class_has_kronecker(m, pool, true);
  rec.has_kronecker_inclusive = rec.kronecker_inclusive_witness.has_value();
}

std::vector<ClassRecord> classify_census(const std::vector<PhaseMatrix>& matrices, const FactorPool& pool,
                                         int jobs) {
  auto records = partition_classes(matrices);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1)) {
      compute_flags(records[i], pool);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool_threads;
    for (int j = 0; j < jobs; ++j) pool_threads.emplace_back(worker);
  }
  return records;
}

CensusSummary summarize(const std::vector<ClassRecord>& records) {
  CensusSummary s;
  s.classes = records.size();
  for (const auto& r : records) {
    s.hadamard += r.has_hadamard;
    s.dual_pair += r.has_dual_pair;
    s.concatenation += r.has_concatenation;
    s.kronecker += r.has_kronecker;
    s.kronecker_inclusive += r.has_kronecker_inclusive;
  }
  return s;
}

}  // namespace ccm
