#include "ccm/correlation.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace ccm {

namespace {

void check_lag(int lag, int n) {
  if (lag <= -n || lag >= n) {
    throw std::out_of_range("lag " + std::to_string(lag) + " outside [-" +
                            std::to_string(n - 1) + ", " + std::to_string(n - 1) + "]");
  }
}

}  // namespace

CycSum autocorrelation(const PhaseCode& x, int lag) {
  const int n = x.length();
  check_lag(lag, n);
  if (lag < 0) return autocorrelation(x, -lag).conj();
  CycSum s(x.modulus());
  for (int i = 0; i + lag < n; ++i) s.add_root(x[i] - x[i + lag]);
  return s;
}

CorrelationProfile autocorrelation_profile(const PhaseCode& x) {
  CorrelationProfile prof;
  prof.max_lag = x.length() - 1;
  for (int j = -prof.max_lag; j <= prof.max_lag; ++j) prof.values.push_back(autocorrelation(x, j));
  return prof;
}

CycSum composite_autocorrelation(const PhaseMatrix& m, int lag) {
  check_lag(lag, m.rows());
  CycSum s(m.modulus());
  for (int k = 0; k < m.cols(); ++k) s += autocorrelation(m.column(k), lag);
  return s;
}

CorrelationProfile composite_profile(const PhaseMatrix& m) {
  CorrelationProfile prof;
  prof.max_lag = m.rows() - 1;
  for (int j = -prof.max_lag; j <= prof.max_lag; ++j) {
    prof.values.push_back(composite_autocorrelation(m, j));
  }
  return prof;
}

CycMatrix row_gramian(const PhaseMatrix& m) {
  const int n = m.rows();
  CycMatrix q;
  q.n = n;
  q.entries.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CycSum s(m.modulus());
      for (int k = 0; k < m.cols(); ++k) s.add_root(m.at(i, k) - m.at(j, k));
      q.entries.push_back(std::move(s));
    }
  }
  return q;
}

CycSum row_correlation(const PhaseMatrix& m, int lag) {
  check_lag(lag, m.rows());
  if (lag < 0) return row_correlation(m, -lag).conj();
  CycSum s(m.modulus());
  for (int i = 0; i + lag < m.rows(); ++i) {
    for (int k = 0; k < m.cols(); ++k) s.add_root(m.at(i, k) - m.at(i + lag, k));
  }
  return s;
}

CycSum diagonal_sum(const CycMatrix& q, int lag) {
  check_lag(lag, q.n);
  CycSum s(q.entries.front().modulus());
  for (int i = 0; i < q.n; ++i) {
    const int j = i + lag;
    if (j >= 0 && j < q.n) s += q.at(i, j);
  }
  return s;
}

bool is_diagonally_regular(const CycMatrix& q) {
  for (int lag = 1 - q.n; lag < q.n; ++lag) {
    if (lag != 0 && !diagonal_sum(q, lag).is_zero()) return false;
  }
  return true;
}

bool is_diagonally_regular(const IntMatrix& q) {
  for (int lag = 1 - q.n; lag < q.n; ++lag) {
    if (lag == 0) continue;
    std::int64_t s = 0;
    for (int i = 0; i < q.n; ++i) {
      const int j = i + lag;
      if (j >= 0 && j < q.n) s += q.at(i, j);
    }
    if (s != 0) return false;
  }
  return true;
}

bool is_ccm(const PhaseMatrix& m) {
  const int p = m.modulus();
  const auto& ring = CyclotomicRing::get(p);
  std::array<std::int64_t, kMaxModulus> counts{};
  const std::span<const std::int64_t> view(counts.data(), static_cast<std::size_t>(p));
  // R(-j) = conj(R(j)), so positive lags suffice.
  for (int lag = 1; lag < m.rows(); ++lag) {
    counts.fill(0);
    for (int i = 0; i + lag < m.rows(); ++i) {
      const auto a = m.row(i);
      const auto b = m.row(i + lag);
      for (int k = 0; k < m.cols(); ++k) ++counts[static_cast<std::size_t>(mod_p(a[k] - b[k], p))];
    }
    if (!ring.is_zero(view)) return false;
  }
  return true;
}

bool has_orthogonal_rows(const PhaseMatrix& m) {
  const int p = m.modulus();
  const auto& ring = CyclotomicRing::get(p);
  std::array<std::int64_t, kMaxModulus> counts{};
  const std::span<const std::int64_t> view(counts.data(), static_cast<std::size_t>(p));
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = i + 1; j < m.rows(); ++j) {
      counts.fill(0);
      const auto a = m.row(i);
      const auto b = m.row(j);
      for (int k = 0; k < m.cols(); ++k) ++counts[static_cast<std::size_t>(mod_p(a[k] - b[k], p))];
      if (!ring.is_zero(view)) return false;
    }
  }
  return true;
}

IntMatrix ternary_gramian(const TernaryMatrix& a) {
  IntMatrix q;
  q.n = a.rows();
  q.entries.assign(static_cast<std::size_t>(q.n) * static_cast<std::size_t>(q.n), 0);
  for (int i = 0; i < q.n; ++i) {
    for (int j = 0; j < q.n; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * a.at(j, k);
      q.entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(q.n) +
                static_cast<std::size_t>(j)] = s;
    }
  }
  return q;
}

bool ternary_is_ccm(const TernaryMatrix& a) {
  for (int lag = 1; lag < a.rows(); ++lag) {
    std::int64_t s = 0;
    for (int i = 0; i + lag < a.rows(); ++i) {
      for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * a.at(i + lag, k);
    }
    if (s != 0) return false;
  }
  return true;
}

}  // namespace ccm
