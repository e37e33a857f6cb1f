#pragma once

// Equivalence classes of CCMs and the per-class provenance flags.
//
// A flag is set when some member of the orbit has the property. The fast
// `class_has_*` scans visit only the orbit members that can differ with
// respect to the property; the `*_full` variants take the whole orbit (see
// orbit_closure) and exist to cross-check them.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "ccm/phase_matrix.hpp"

namespace ccm {

struct ConcatenationWitness {
  PhaseMatrix member;  // == concatenate(left, right)
  PhaseMatrix left;
  PhaseMatrix right;
};

struct KroneckerWitness {
  PhaseMatrix member;  // == kronecker(left, right)
  PhaseMatrix left;
  PhaseMatrix right;
};

struct ClassRecord {
  PhaseMatrix canonical;
  std::uint64_t orbit_size = 0;
  bool has_hadamard = false;
  bool has_dual_pair = false;
  bool has_concatenation = false;
  /// Factors with a single row excluded.
  bool has_kronecker = false;
  /// Any factor shapes other than 1×1.
  bool has_kronecker_inclusive = false;
  std::optional<PhaseMatrix> hadamard_witness;
  std::optional<PhaseMatrix> dual_pair_witness;
  std::optional<ConcatenationWitness> concatenation_witness;
  std::optional<KroneckerWitness> kronecker_witness;
  std::optional<KroneckerWitness> kronecker_inclusive_witness;
};

/// Canonical forms of every CCM class, by shape.
class FactorPool {
 public:
  void add(const PhaseMatrix& m);
  void add_shape(int p, int n_rows, int n_cols);  // runs the search
  bool has_shape(int p, int n_rows, int n_cols) const;
  /// Throws std::out_of_range when the shape was never added.
  bool contains(const PhaseMatrix& m) const;

 private:
  std::map<std::tuple<int, int, int>, std::set<PhaseMatrix>> classes_;
};

/// Factor shapes needed to classify N×K: widths 1..K-1 for concatenation and
/// every (N1×K1, N2×K2) split of N×K except 1×1 factors.
std::vector<std::pair<int, int>> required_factor_shapes(int n_rows, int n_cols);
FactorPool build_factor_pool(int p, int n_rows, int n_cols);

/// One record per class, sorted by canonical form; flags are left unset.
std::vector<ClassRecord> partition_classes(const std::vector<PhaseMatrix>& matrices);

std::optional<PhaseMatrix> class_has_hadamard(const PhaseMatrix& m);
std::optional<PhaseMatrix> class_has_hadamard_full(const std::vector<PhaseMatrix>& members);

/// Throws std::invalid_argument unless p = 4.
std::optional<PhaseMatrix> class_has_dual_pair(const PhaseMatrix& m);
std::optional<PhaseMatrix> class_has_dual_pair_full(const std::vector<PhaseMatrix>& members);

std::optional<ConcatenationWitness> class_has_concatenation(const PhaseMatrix& m, const FactorPool& pool);
std::optional<ConcatenationWitness> class_has_concatenation_full(const std::vector<PhaseMatrix>& members,
                                                                const FactorPool& pool);

std::optional<KroneckerWitness> class_has_kronecker(const PhaseMatrix& m, const FactorPool& pool,
                                                    bool allow_single_row = false);
std::optional<KroneckerWitness> class_has_kronecker_full(const std::vector<PhaseMatrix>& members,
                                                         const FactorPool& pool,
                                                         bool allow_single_row = false);

/// Factors (A, B) with m == kronecker(A, B) for the given factor shape.
std::optional<std::pair<PhaseMatrix, PhaseMatrix>> kronecker_factors(const PhaseMatrix& m, int n1, int k1);

void compute_flags(ClassRecord& rec, const FactorPool& pool);

/// partition_classes followed by compute_flags on every class.
std::vector<ClassRecord> classify_census(const std::vector<PhaseMatrix>& matrices, const FactorPool& pool,
                                         int jobs = 1);

struct CensusSummary {
  std::uint64_t classes = 0;
  std::uint64_t hadamard = 0;
  std::uint64_t dual_pair = 0;
  std::uint64_t concatenation = 0;
  std::uint64_t kronecker = 0;
  std::uint64_t kronecker_inclusive = 0;
};
CensusSummary summarize(const std::vector<ClassRecord>& records);

}  // namespace ccm
