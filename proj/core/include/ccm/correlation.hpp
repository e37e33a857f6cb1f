#pragma once

// Aperiodic correlations, row Gramians and the CCM test. Everything is exact;
// see cyclotomic.hpp.

#include <cstdint>
#include <vector>

#include "ccm/cyclotomic.hpp"
#include "ccm/phase_matrix.hpp"

namespace ccm {

/// Square matrix of cyclotomic integers, row-major.
struct CycMatrix {
  int n = 0;
  std::vector<CycSum> entries;

  const CycSum& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(j)];
  }
};

/// Square integer matrix, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<std::int64_t> entries;

  std::int64_t at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(j)];
  }
};

/// Values at lags -(N-1) .. N-1; values[0] holds lag -(N-1).
struct CorrelationProfile {
  int max_lag = 0;
  std::vector<CycSum> values;

  const CycSum& at(int lag) const { return values[static_cast<std::size_t>(lag + max_lag)]; }
};

/// A_x(j) = Σ_i a_i conj(a_{i+j}); A_x(-j) = conj(A_x(j)).
CycSum autocorrelation(const PhaseCode& x, int lag);
CorrelationProfile autocorrelation_profile(const PhaseCode& x);

/// Σ_k A_{x_k}(j) over the columns of m.
CycSum composite_autocorrelation(const PhaseMatrix& m, int lag);
CorrelationProfile composite_profile(const PhaseMatrix& m);

/// M·M*, entry (i, j) = r_i · conj(r_j).
CycMatrix row_gramian(const PhaseMatrix& m);

/// R_M(j) = Σ_i r_i · conj(r_{i+j}).
CycSum row_correlation(const PhaseMatrix& m, int lag);

/// Sum of the lag-th diagonal (j - i == lag) of a square matrix.
CycSum diagonal_sum(const CycMatrix& q, int lag);

bool is_diagonally_regular(const CycMatrix& q);
bool is_diagonally_regular(const IntMatrix& q);

/// R_M(j) == 0 for every j != 0.
bool is_ccm(const PhaseMatrix& m);

/// True iff M·M* == K·I_N (mutually orthogonal rows).
bool has_orthogonal_rows(const PhaseMatrix& m);

IntMatrix ternary_gramian(const TernaryMatrix& a);
bool ternary_is_ccm(const TernaryMatrix& a);

}  // namespace ccm
