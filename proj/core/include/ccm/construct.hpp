#pragma once

// Constructions of new CCMs from old ones.

#include <utility>

#include "ccm/correlation.hpp"
#include "ccm/phase_matrix.hpp"

namespace ccm {

/// (N1 N2)×(K1 K2) Kronecker product; row n1·N2 + n2, column k1·K2 + k2.
/// Mixed moduli are embedded into lcm(p1, p2). If both inputs are CCMs the
/// result is re-verified and std::logic_error is thrown if it is not.
PhaseMatrix kronecker(const PhaseMatrix& a, const PhaseMatrix& b);

/// Column concatenation [A, B]. Throws std::invalid_argument when N or p
/// differ.
PhaseMatrix concatenate(const PhaseMatrix& a, const PhaseMatrix& b);

/// Entrywise: |A| + |B| = 1.
bool is_dual_pair(const TernaryMatrix& a, const TernaryMatrix& b);

/// B Aᵀ - A Bᵀ, the cross term of (A + iB)(A + iB)*.
IntMatrix dual_cross_term(const TernaryMatrix& a, const TernaryMatrix& b);

/// Z = A + iB as a 4-phase matrix. Checks every hypothesis first and throws
/// ConditionViolated naming the one that fails; throws std::logic_error if
/// the result is not a CCM.
PhaseMatrix dual_pair_combine(const TernaryMatrix& a, const TernaryMatrix& b);

/// (Re Z, Im Z) for a 4-phase Z.
std::pair<TernaryMatrix, TernaryMatrix> dual_pair_split(const PhaseMatrix& z);

}  // namespace ccm
