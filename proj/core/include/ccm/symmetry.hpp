#pragma once

// The five CCM-preserving symmetries and the group they generate.
//
// Generators, acting on an N×K p-phase matrix M = [x_1, ..., x_K]:
//   S        conjugate every entry
//   P_σ      column permutation, (P_σ M) column k = column σ(k) of M
//   C_U      multiply column k by ω^{U[k]}
//   ρ_T      replace column k by its conjugate reversal when T[k] = 1
//   Q(β)     multiply row n (1-based) by β^n, β = ω^b
//
// Every element has a unique normal form S^s · P_σ · C_U · ρ_T · Q(β), the
// rightmost factor acting first. Products are brought into normal form by
// the rewrite rules in `normal_form`.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ccm/phase_matrix.hpp"

namespace ccm {

struct SymmetryElement {
  int p = 1;
  int n_rows = 1;
  int n_cols = 1;
  bool conj = false;
  std::vector<int> perm;               // σ, 0-based: perm[k] = σ(k)
  std::vector<int> col_mult;           // U, exponents mod p
  std::vector<int> rev_mask;           // T, bits
  int prog = 0;                        // b, β = ω^b

  static SymmetryElement identity(int p, int n_rows, int n_cols);

  friend bool operator==(const SymmetryElement&, const SymmetryElement&) = default;
};

/// `S:<0|1> P:<σ(1)..σ(K), 1-based> U:<digits> T:<bits> Q:<digit>`.
/// Permutation entries are comma-separated when K > 9.
std::string to_string(const SymmetryElement& g);
SymmetryElement parse_symmetry(std::string_view text, int p, int n_rows);

/// A single generator in a word.
struct Generator {
  enum class Kind { kConj = 0, kPerm = 1, kColMult = 2, kReversal = 3, kProg = 4 };
  Kind kind = Kind::kConj;
  std::vector<int> data;  // σ, U or T depending on kind
  int value = 0;          // b for kProg

  static Generator conj() { return {Kind::kConj, {}, 0}; }
  static Generator perm(std::vector<int> sigma) { return {Kind::kPerm, std::move(sigma), 0}; }
  static Generator col_mult(std::vector<int> u) { return {Kind::kColMult, std::move(u), 0}; }
  static Generator reversal(std::vector<int> t) { return {Kind::kReversal, std::move(t), 0}; }
  static Generator prog(int b) { return {Kind::kProg, {}, b}; }

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Product of generators; the leftmost generator acts last.
using Word = std::vector<Generator>;

PhaseMatrix apply(const Generator& g, const PhaseMatrix& m);
PhaseMatrix apply(const Word& w, const PhaseMatrix& m);
PhaseMatrix apply(const SymmetryElement& g, const PhaseMatrix& m);

Word to_word(const SymmetryElement& g);

/// Rewrites a word into normal form using the commutation relations
///   P S = S P, C_U S = S C_Ū, C_U P = P C_{U_P}, ρ_T S = S ρ_T,
///   ρ_T P = P ρ_{T_{P⁻¹}}, ρ_T C_U = C_{U_T} ρ_T, Q(β) S = S Q(β̄),
///   Q(β) P = P Q(β), Q(β) C_U = C_U Q(β), Q(β) ρ_T = C_{U_{T,β}} ρ_T Q(β)
/// and merging adjacent factors of the same family.
SymmetryElement normal_form(const Word& w, int p, int n_rows, int n_cols);

/// Normal form of g∘h: apply(compose(g, h), M) == apply(g, apply(h, M)).
SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h);
SymmetryElement inverse(const SymmetryElement& g);

// Multiplier and mask transforms appearing in the relations.

/// Ū: conjugated multipliers.
std::vector<int> conj_multipliers(const std::vector<int>& u, int p);
/// U_P, defined by C_U P_σ = P_σ C_{U_P}: entry σ(k) is U[k].
std::vector<int> permuted_multipliers(const std::vector<int>& u, const std::vector<int>& sigma);
/// T_{P⁻¹}, defined by ρ_T P_σ = P_σ ρ_{T_{P⁻¹}}: entry σ(k) is T[k].
std::vector<int> permuted_mask(const std::vector<int>& t, const std::vector<int>& sigma);
/// U_{T,β}: β^{N+1} where T[k] = 1, else 1.
std::vector<int> reversal_multipliers(const std::vector<int>& t, int b, int n_rows, int p);
/// U_T: multipliers conjugated where T[k] = 1.
std::vector<int> masked_conj_multipliers(const std::vector<int>& u, const std::vector<int>& t, int p);

/// 2^{K+1} p^{K+1} K!, the number of normal forms.
std::uint64_t group_order_bound(int p, int n_cols);

/// Visits every normal form once.
void for_each_element(int p, int n_rows, int n_cols,
                      const std::function<void(const SymmetryElement&)>& visit);

/// Unique matrix of the form C_U Q(β) M with first row all ones and
/// m_{2,1} = 1 (when N ≥ 2), with its witness element.
struct Normalized {
  PhaseMatrix matrix;
  SymmetryElement witness;
};
Normalized normalize(const PhaseMatrix& m);
bool is_normalized(const PhaseMatrix& m);

struct Orbit {
  std::vector<PhaseMatrix> members;  // sorted
  PhaseMatrix canonical;
  std::uint64_t size = 0;
};

/// Orbit of m, computed by BFS closure under the generator families and
/// cross-checked against the images of all normal forms. Throws
/// std::logic_error if the two disagree and GuardExceeded when the group is
/// larger than 10^7 elements.
Orbit orbit(const PhaseMatrix& m);

/// Orbit by BFS closure only.
std::vector<PhaseMatrix> orbit_closure(const PhaseMatrix& m);
/// Orbit as the set of images of all normal forms.
std::vector<PhaseMatrix> orbit_images(const PhaseMatrix& m);

/// Lexicographically least member of the orbit (row-major exponent order).
PhaseMatrix canonical_form(const PhaseMatrix& m);

/// Exact orbit size, without materializing the orbit.
std::uint64_t orbit_size(const PhaseMatrix& m);

/// Multiplies each column by the conjugate of its first entry.
PhaseMatrix normalize_columns(const PhaseMatrix& m);

}  // namespace ccm
