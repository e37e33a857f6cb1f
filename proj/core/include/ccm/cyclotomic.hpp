#pragma once

// Exact arithmetic in the ring Z[ω], ω = exp(2πi/p).
//
// A CycSum stores Σ_k c_k ω^k as an integer vector of length p. The
// representation is not unique (1 + ω + ... + ω^{p-1} = 0 for p > 1), so
// value comparisons go through the remainder modulo the cyclotomic
// polynomial Φ_p, which is the canonical form of an element of Z[ω].

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ccm {

/// Largest supported modulus. Exponents are printed as base-36 digits.
inline constexpr int kMaxModulus = 36;

/// Integer polynomial, coefficients ordered from x^0 upward.
using IntPoly = std::vector<std::int64_t>;

/// Φ_p by exact division of x^p - 1 by Π_{d|p, d<p} Φ_d.
IntPoly cyclotomic_polynomial(int p);

/// Cached Φ_p together with the reduction routines used on hot paths.
class CyclotomicRing {
 public:
  explicit CyclotomicRing(int p);

  /// Shared instance for modulus p; thread-safe.
  static const CyclotomicRing& get(int p);

  int modulus() const { return p_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const IntPoly& phi() const { return phi_; }

  /// Remainder of Σ coeffs[k] x^k modulo Φ_p, length degree().
  std::vector<std::int64_t> reduce(std::span<const std::int64_t> coeffs) const;

  /// True iff Σ coeffs[k] ω^k == 0. coeffs.size() must equal p.
  bool is_zero(std::span<const std::int64_t> coeffs) const;

 private:
  int p_;
  IntPoly phi_;
};

class CycSum {
 public:
  explicit CycSum(int p);
  CycSum(int p, std::vector<std::int64_t> coeffs);

  static CycSum root(int p, int exponent);
  static CycSum integer(int p, std::int64_t value);

  int modulus() const { return p_; }
  std::span<const std::int64_t> coeffs() const { return coeffs_; }

  /// Adds `count` copies of ω^exponent.
  void add_root(int exponent, std::int64_t count = 1);

  CycSum conj() const;
  CycSum operator-() const;
  CycSum& operator+=(const CycSum& other);
  CycSum& operator-=(const CycSum& other);
  friend CycSum operator+(CycSum a, const CycSum& b) { return a += b; }
  friend CycSum operator-(CycSum a, const CycSum& b) { return a -= b; }
  friend CycSum operator*(const CycSum& a, const CycSum& b);

  bool is_zero() const;

  /// Canonical coordinates: remainder modulo Φ_p.
  std::vector<std::int64_t> reduced() const;

  /// a + bi when p divides 4; empty otherwise.
  std::optional<std::pair<std::int64_t, std::int64_t>> gaussian() const;

  std::complex<double> to_complex() const;

  /// Value equality (exact), not representation equality.
  friend bool operator==(const CycSum& a, const CycSum& b);

 private:
  int p_;
  std::vector<std::int64_t> coeffs_;
};

bool cyc_is_zero(const CycSum& s);

/// |a| + |b| for s = a + bi (p | 4). For other moduli, Σ|c| over the
/// remainder modulo Φ_p; that extension is zero iff s is zero.
std::int64_t taxicab_norm(const CycSum& s);

}  // namespace ccm
