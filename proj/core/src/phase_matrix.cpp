#include "ccm/phase_matrix.hpp"

#include <stdexcept>
#include <string>

#include "ccm/cyclotomic.hpp"

namespace ccm {

namespace {

void check_modulus(int p) {
  if (p < 1 || p > kMaxModulus) {
    throw std::invalid_argument("modulus out of range: " + std::to_string(p));
  }
}

}  // namespace

PhaseCode::PhaseCode(int p, std::vector<Exponent> exps) : p_(p), exps_(std::move(exps)) {
  check_modulus(p);
  if (exps_.empty()) throw std::invalid_argument("PhaseCode: length must be >= 1");
  for (auto& e : exps_) e = static_cast<Exponent>(e % p);
}

PhaseMatrix::PhaseMatrix(int p, int n_rows, int n_cols, std::vector<Exponent> exps)
    : p_(p), n_rows_(n_rows), n_cols_(n_cols), exps_(std::move(exps)) {
  check_modulus(p);
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("PhaseMatrix: dimensions must be positive");
  if (exps_.size() != static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols)) {
    throw std::invalid_argument("PhaseMatrix: exponent count does not match N*K");
  }
  for (auto& e : exps_) e = static_cast<Exponent>(e % p);
}

PhaseMatrix::PhaseMatrix(int p, std::initializer_list<std::initializer_list<int>> rows) : p_(p) {
  check_modulus(p);
  n_rows_ = static_cast<int>(rows.size());
  n_cols_ = n_rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  if (n_rows_ < 1 || n_cols_ < 1) throw std::invalid_argument("PhaseMatrix: dimensions must be positive");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_cols_) throw std::invalid_argument("PhaseMatrix: ragged rows");
    for (int e : r) exps_.push_back(static_cast<Exponent>(mod_p(e, p)));
  }
}

PhaseMatrix PhaseMatrix::ones(int p, int n_rows, int n_cols) {
  return PhaseMatrix(p, n_rows, n_cols,
                     std::vector<Exponent>(static_cast<std::size_t>(n_rows) *
                                               static_cast<std::size_t>(n_cols),
                                           0));
}

PhaseCode PhaseMatrix::column(int k) const {
  std::vector<Exponent> col(static_cast<std::size_t>(n_rows_));
  for (int n = 0; n < n_rows_; ++n) col[static_cast<std::size_t>(n)] = exps_[index(n, k)];
  return PhaseCode(p_, std::move(col));
}

TernaryMatrix::TernaryMatrix(int n_rows, int n_cols, std::vector<std::int8_t> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("TernaryMatrix: dimensions must be positive");
  if (entries_.size() != static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols)) {
    throw std::invalid_argument("TernaryMatrix: entry count does not match N*K");
  }
  for (auto v : entries_) {
    if (v < -1 || v > 1) throw std::invalid_argument("TernaryMatrix: entries must be -1, 0 or 1");
  }
}

TernaryMatrix::TernaryMatrix(std::initializer_list<std::initializer_list<int>> rows) {
  n_rows_ = static_cast<int>(rows.size());
  n_cols_ = n_rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
  if (n_rows_ < 1 || n_cols_ < 1) throw std::invalid_argument("TernaryMatrix: dimensions must be positive");
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_cols_) throw std::invalid_argument("TernaryMatrix: ragged rows");
    for (int v : r) {
      if (v < -1 || v > 1) throw std::invalid_argument("TernaryMatrix: entries must be -1, 0 or 1");
      entries_.push_back(static_cast<std::int8_t>(v));
    }
  }
}

TernaryMatrix TernaryMatrix::zeros(int n_rows, int n_cols) {
  return TernaryMatrix(n_rows, n_cols,
                       std::vector<std::int8_t>(static_cast<std::size_t>(n_rows) *
                                                    static_cast<std::size_t>(n_cols),
                                                0));
}

bool TernaryMatrix::is_zero() const {
  for (auto v : entries_) {
    if (v != 0) return false;
  }
  return true;
}

std::size_t PhaseMatrixHash::operator()(const PhaseMatrix& m) const noexcept {
  // FNV-1a over the shape and exponents.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(m.modulus()));
  mix(static_cast<std::uint64_t>(m.rows()));
  mix(static_cast<std::uint64_t>(m.cols()));
  for (auto e : m.exponents()) mix(e);
  return static_cast<std::size_t>(h);
}

}  // namespace ccm
