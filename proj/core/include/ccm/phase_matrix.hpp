#pragma once

// Value types for p-phase codes and matrices. Entries are stored as
// exponents e in {0, ..., p-1}, standing for ω^e; the unimodular constraint
// is carried by the representation.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace ccm {

using Exponent = std::uint8_t;

inline int mod_p(int value, int p) {
  const int r = value % p;
  return r < 0 ? r + p : r;
}

class PhaseCode {
 public:
  PhaseCode(int p, std::vector<Exponent> exps);

  int modulus() const { return p_; }
  int length() const { return static_cast<int>(exps_.size()); }
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  std::span<const Exponent> exponents() const { return exps_; }

  friend bool operator==(const PhaseCode&, const PhaseCode&) = default;

 private:
  int p_;
  std::vector<Exponent> exps_;
};

class PhaseMatrix {
 public:
  PhaseMatrix() = default;
  /// Row-major exponents; every value is reduced modulo p.
  PhaseMatrix(int p, int n_rows, int n_cols, std::vector<Exponent> exps);
  PhaseMatrix(int p, std::initializer_list<std::initializer_list<int>> rows);

  /// All-ones (exponent 0) matrix.
  static PhaseMatrix ones(int p, int n_rows, int n_cols);

  int modulus() const { return p_; }
  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }

  int at(int n, int k) const { return exps_[index(n, k)]; }
  void set(int n, int k, int exponent) {
    exps_[index(n, k)] = static_cast<Exponent>(mod_p(exponent, p_));
  }

  std::span<const Exponent> row(int n) const {
    return {exps_.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n_cols_),
            static_cast<std::size_t>(n_cols_)};
  }
  PhaseCode column(int k) const;
  std::span<const Exponent> exponents() const { return exps_; }

  /// Row-major lexicographic order on (p, N, K, exponents); within one
  /// (p, N, K) this is the order of the archive digit strings.
  friend auto operator<=>(const PhaseMatrix&, const PhaseMatrix&) = default;
  friend bool operator==(const PhaseMatrix&, const PhaseMatrix&) = default;

 private:
  std::size_t index(int n, int k) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n_cols_) +
           static_cast<std::size_t>(k);
  }

  int p_ = 1;
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<Exponent> exps_;
};

/// N×K matrix over {-1, 0, +1}.
class TernaryMatrix {
 public:
  TernaryMatrix() = default;
  TernaryMatrix(int n_rows, int n_cols, std::vector<std::int8_t> entries);
  TernaryMatrix(std::initializer_list<std::initializer_list<int>> rows);

  static TernaryMatrix zeros(int n_rows, int n_cols);

  int rows() const { return n_rows_; }
  int cols() const { return n_cols_; }
  int at(int n, int k) const {
    return entries_[static_cast<std::size_t>(n) * static_cast<std::size_t>(n_cols_) +
                    static_cast<std::size_t>(k)];
  }
  std::span<const std::int8_t> entries() const { return entries_; }
  bool is_zero() const;

  friend auto operator<=>(const TernaryMatrix&, const TernaryMatrix&) = default;
  friend bool operator==(const TernaryMatrix&, const TernaryMatrix&) = default;

 private:
  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<std::int8_t> entries_;
};

struct PhaseMatrixHash {
  std::size_t operator()(const PhaseMatrix& m) const noexcept;
};

}  // namespace ccm
