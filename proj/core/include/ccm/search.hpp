#pragma once

// Exhaustive search for p-phase N×K CCMs.
//
// Rows are placed from the outside in: r_1 (all ones), r_N, r_2, r_{N-1},
// r_3, ... Placing a bottom row r_b fixes the lag-(b-1) row correlation, so
// its candidates are exactly the rows whose sum cancels the partial
// correlation already accumulated. Symmetry breaking:
//   - normalization: r_1 all ones, m_{2,1} = 1
//   - sorted rows: each row placed from the top is non-decreasing on every
//     run of columns the rows above it leave tied (the middle row of an odd
//     N is left free)
//   - reversal: for k ≥ 2, exp(m_{2,k}) ≤ exp(conj(m_{N-1,k}) m_{N,k})
// N = 2 and N = 3 take the short paths: every zero-sum last row for N = 2,
// and a direct lag-1 check for N = 3.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ccm/phase_matrix.hpp"

namespace ccm {

using Row = std::vector<int>;

struct ProgressRecord {
  std::uint64_t branch = 0;
  std::uint64_t nodes = 0;
  std::uint64_t found = 0;
};

struct SearchConfig {
  int p = 4;
  int n_rows = 2;
  int n_cols = 4;
  bool prune_reversal = true;
  bool prune_sorted_rows = true;
  /// false: one canonical representative per equivalence class.
  bool emit_raw = true;
  int jobs = 1;
  /// Lifts the N·K·log2(p) ≤ 64 guard (also lifted by CCM_GUARD_OVERRIDE=1).
  bool guard_override = false;
  /// JSON-lines checkpoint; completed branches found there are not re-run.
  std::string checkpoint_path;
  std::function<void(const ProgressRecord&)> on_progress;
  std::uint64_t progress_interval = 1'000'000;
};

struct SearchResult {
  std::vector<PhaseMatrix> matrices;  // sorted
  std::uint64_t nodes = 0;
  std::uint64_t branches = 0;
  std::uint64_t resumed_branches = 0;
};

struct RowCandidateSet {
  Row base_row;
  std::vector<Row> candidates;  // lexicographic
};

/// All K-tuples of p-th roots (as exponents) whose sum is exactly zero.
std::vector<Row> zero_sum_tuples(int p, int n_cols);

/// Rows whose exponents are non-decreasing on every run of equal
/// consecutive entries of `base`.
RowCandidateSet increasing_exponent_rows(const Row& base, int p);

SearchResult search_ccm(const SearchConfig& cfg);

/// Every N×K ternary matrix with a diagonally regular Gramian, sorted by
/// archive text.
std::vector<TernaryMatrix> search_ternary_ccm(int n_rows, int n_cols);

/// Every p-phase N×K CCM by full enumeration (p^{NK} ≤ 10^8).
std::vector<PhaseMatrix> brute_force_ccm(int p, int n_rows, int n_cols);

}  // namespace ccm
