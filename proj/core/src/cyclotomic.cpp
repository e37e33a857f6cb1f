#include "ccm/cyclotomic.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ccm {

namespace {

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Quotient of num / den for monic den; throws if the division is inexact.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (den.back() != 1) throw std::logic_error("divide_exact: divisor not monic");
  if (num.size() < den.size()) throw std::logic_error("divide_exact: degree");
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t d = num.size(); d-- > dd;) {
    const std::int64_t c = num[d];
    quot[d - dd] = c;
    if (c != 0) {
      for (std::size_t j = 0; j <= dd; ++j) num[d - dd + j] -= c * den[j];
    }
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (num[j] != 0) throw std::logic_error("divide_exact: nonzero remainder");
  }
  return quot;
}

void check_modulus(int p) {
  if (p < 1 || p > kMaxModulus) {
    throw std::invalid_argument("modulus out of range [1, " +
                                std::to_string(kMaxModulus) +
                                "]: " + std::to_string(p));
  }
}

}  // namespace

IntPoly cyclotomic_polynomial(int p) {
  if (p < 1) throw std::invalid_argument("cyclotomic_polynomial: p must be >= 1");
  IntPoly xp(static_cast<std::size_t>(p) + 1, 0);
  xp[0] = -1;
  xp[static_cast<std::size_t>(p)] = 1;
  if (p == 1) return xp;
  IntPoly den{1};
  for (int d = 1; d < p; ++d) {
    if (p % d == 0) den = multiply(den, cyclotomic_polynomial(d));
  }
  return divide_exact(std::move(xp), den);
}

CyclotomicRing::CyclotomicRing(int p) : p_(p), phi_(cyclotomic_polynomial(p)) {
  check_modulus(p);
}

const CyclotomicRing& CyclotomicRing::get(int p) {
  check_modulus(p);
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicRing>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<CyclotomicRing>(p);
  return *slot;
}

std::vector<std::int64_t> CyclotomicRing::reduce(
    std::span<const std::int64_t> coeffs) const {
  const int deg = degree();
  std::vector<std::int64_t> work(coeffs.begin(), coeffs.end());
  if (static_cast<int>(work.size()) < deg) work.resize(static_cast<std::size_t>(deg), 0);
  for (int d = static_cast<int>(work.size()) - 1; d >= deg; --d) {
    const std::int64_t c = work[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    for (int j = 0; j <= deg; ++j) {
      work[static_cast<std::size_t>(d - deg + j)] -= c * phi_[static_cast<std::size_t>(j)];
    }
  }
  work.resize(static_cast<std::size_t>(deg));
  return work;
}

bool CyclotomicRing::is_zero(std::span<const std::int64_t> coeffs) const {
  // p | 4 is the common case and has a closed form.
  switch (p_) {
    case 1:
      return coeffs.empty() || coeffs[0] == 0;
    case 2:
      return coeffs.size() == 2 && coeffs[0] == coeffs[1];
    case 4:
      return coeffs.size() == 4 && coeffs[0] == coeffs[2] && coeffs[1] == coeffs[3];
    default:
      break;
  }
  const int deg = degree();
  std::array<std::int64_t, kMaxModulus> work{};
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i < n; ++i) work[i] = coeffs[i];
  for (int d = static_cast<int>(n) - 1; d >= deg; --d) {
    const std::int64_t c = work[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    for (int j = 0; j <= deg; ++j) {
      work[static_cast<std::size_t>(d - deg + j)] -= c * phi_[static_cast<std::size_t>(j)];
    }
  }
  for (int j = 0; j < deg; ++j) {
    if (work[static_cast<std::size_t>(j)] != 0) return false;
  }
  return true;
}

CycSum::CycSum(int p) : p_(p), coeffs_(static_cast<std::size_t>(p), 0) { check_modulus(p); }

CycSum::CycSum(int p, std::vector<std::int64_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  check_modulus(p);
  if (coeffs_.size() != static_cast<std::size_t>(p)) {
    throw std::invalid_argument("CycSum: coefficient vector length must equal p");
  }
}

CycSum CycSum::root(int p, int exponent) {
  CycSum s(p);
  s.add_root(exponent);
  return s;
}

CycSum CycSum::integer(int p, std::int64_t value) {
  CycSum s(p);
  s.coeffs_[0] = value;
  return s;
}

void CycSum::add_root(int exponent, std::int64_t count) {
  int e = exponent % p_;
  if (e < 0) e += p_;
  coeffs_[static_cast<std::size_t>(e)] += count;
}

CycSum CycSum::conj() const {
  CycSum out(p_);
  for (int k = 0; k < p_; ++k) {
    out.coeffs_[static_cast<std::size_t>((p_ - k) % p_)] = coeffs_[static_cast<std::size_t>(k)];
  }
  return out;
}

CycSum CycSum::operator-() const {
  CycSum out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycSum& CycSum::operator+=(const CycSum& other) {
  if (other.p_ != p_) throw std::invalid_argument("CycSum: modulus mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CycSum& CycSum::operator-=(const CycSum& other) {
  if (other.p_ != p_) throw std::invalid_argument("CycSum: modulus mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CycSum operator*(const CycSum& a, const CycSum& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("CycSum: modulus mismatch");
  const int p = a.p_;
  CycSum out(p);
  for (int i = 0; i < p; ++i) {
    const std::int64_t ai = a.coeffs_[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j < p; ++j) {
      out.coeffs_[static_cast<std::size_t>((i + j) % p)] += ai * b.coeffs_[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

bool CycSum::is_zero() const { return CyclotomicRing::get(p_).is_zero(coeffs_); }

std::vector<std::int64_t> CycSum::reduced() const { return CyclotomicRing::get(p_).reduce(coeffs_); }

std::optional<std::pair<std::int64_t, std::int64_t>> CycSum::gaussian() const {
  switch (p_) {
    case 1:
      return std::pair{coeffs_[0], std::int64_t{0}};
    case 2:
      return std::pair{coeffs_[0] - coeffs_[1], std::int64_t{0}};
    case 4:
      return std::pair{coeffs_[0] - coeffs_[2], coeffs_[1] - coeffs_[3]};
    default:
      return std::nullopt;
  }
}

std::complex<double> CycSum::to_complex() const {
  std::complex<double> z{0.0, 0.0};
  for (int k = 0; k < p_; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / p_;
    z += static_cast<double>(coeffs_[static_cast<std::size_t>(k)]) *
         std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

bool operator==(const CycSum& a, const CycSum& b) {
  if (a.p_ != b.p_) return false;
  return (a - b).is_zero();
}

bool cyc_is_zero(const CycSum& s) { return s.is_zero(); }

std::int64_t taxicab_norm(const CycSum& s) {
  if (auto g = s.gaussian()) return std::abs(g->first) + std::abs(g->second);
  std::int64_t total = 0;
  for (auto c : s.reduced()) total += std::abs(c);
  return total;
}

}  // namespace ccm
