#include "ccm/construct.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ccm/cyclotomic.hpp"
#include "ccm/errors.hpp"

namespace ccm {

namespace {

void check_same_shape(const TernaryMatrix& a, const TernaryMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("ternary matrices differ in shape");
  }
}

}  // namespace

PhaseMatrix kronecker(const PhaseMatrix& a, const PhaseMatrix& b) {
  const int p = std::lcm(a.modulus(), b.modulus());
  if (p > kMaxModulus) {
    throw std::invalid_argument("kronecker: lcm of moduli exceeds " + std::to_string(kMaxModulus));
  }
  const int sa = p / a.modulus();
  const int sb = p / b.modulus();
  const int n = a.rows() * b.rows();
  const int k = a.cols() * b.cols();
  std::vector<Exponent> exps(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
  for (int n1 = 0; n1 < a.rows(); ++n1) {
    for (int n2 = 0; n2 < b.rows(); ++n2) {
      for (int k1 = 0; k1 < a.cols(); ++k1) {
        for (int k2 = 0; k2 < b.cols(); ++k2) {
          const int row = n1 * b.rows() + n2;
          const int col = k1 * b.cols() + k2;
          exps[static_cast<std::size_t>(row * k + col)] =
              static_cast<Exponent>(mod_p(a.at(n1, k1) * sa + b.at(n2, k2) * sb, p));
        }
      }
    }
  }
  PhaseMatrix out(p, n, k, std::move(exps));
  if (is_ccm(a) && is_ccm(b) && !is_ccm(out)) {
    throw std::logic_error("kronecker product of CCMs is not a CCM");
  }
  return out;
}

PhaseMatrix concatenate(const PhaseMatrix& a, const PhaseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("concatenate: row counts differ (" + std::to_string(a.rows()) +
                                " vs " + std::to_string(b.rows()) + ")");
  }
  if (a.modulus() != b.modulus()) throw std::invalid_argument("concatenate: moduli differ");
  const int k = a.cols() + b.cols();
  std::vector<Exponent> exps;
  exps.reserve(static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(k));
  for (int n = 0; n < a.rows(); ++n) {
    for (auto e : a.row(n)) exps.push_back(e);
    for (auto e : b.row(n)) exps.push_back(e);
  }
  PhaseMatrix out(a.modulus(), a.rows(), k, std::move(exps));
  if (is_ccm(a) && is_ccm(b) && !is_ccm(out)) {
    throw std::logic_error("concatenation of CCMs is not a CCM");
  }
  return out;
}

bool is_dual_pair(const TernaryMatrix& a, const TernaryMatrix& b) {
  check_same_shape(a, b);
  for (int n = 0; n < a.rows(); ++n) {
    for (int k = 0; k < a.cols(); ++k) {
      if (std::abs(a.at(n, k)) + std::abs(b.at(n, k)) != 1) return false;
    }
  }
  return true;
}

IntMatrix dual_cross_term(const TernaryMatrix& a, const TernaryMatrix& b) {
  check_same_shape(a, b);
  IntMatrix q;
  q.n = a.rows();
  q.entries.assign(static_cast<std::size_t>(q.n) * static_cast<std::size_t>(q.n), 0);
  for (int i = 0; i < q.n; ++i) {
    for (int j = 0; j < q.n; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < a.cols(); ++k) s += b.at(i, k) * a.at(j, k) - a.at(i, k) * b.at(j, k);
      q.entries[static_cast<std::size_t>(i * q.n + j)] = s;
    }
  }
  return q;
}

PhaseMatrix dual_pair_combine(const TernaryMatrix& a, const TernaryMatrix& b) {
  check_same_shape(a, b);
  if (!is_dual_pair(a, b)) throw ConditionViolated("not a dual pair: some |A| + |B| != 1");
  if (!is_diagonally_regular(dual_cross_term(a, b))) {
    throw ConditionViolated("cross term B*A^T - A*B^T is not diagonally regular");
  }
  if (!ternary_is_ccm(a)) throw ConditionViolated("A is not a ternary CCM");
  if (!ternary_is_ccm(b)) throw ConditionViolated("B is not a ternary CCM");

  std::vector<Exponent> exps;
  exps.reserve(a.entries().size());
  for (int n = 0; n < a.rows(); ++n) {
    for (int k = 0; k < a.cols(); ++k) {
      const int re = a.at(n, k);
      const int im = b.at(n, k);
      exps.push_back(static_cast<Exponent>(re == 1 ? 0 : im == 1 ? 1 : re == -1 ? 2 : 3));
    }
  }
  PhaseMatrix z(4, a.rows(), a.cols(), std::move(exps));
  if (!is_ccm(z)) throw std::logic_error("dual pair combined to a non-CCM");
  return z;
}

std::pair<TernaryMatrix, TernaryMatrix> dual_pair_split(const PhaseMatrix& z) {
  if (z.modulus() != 4) {
    throw std::invalid_argument("dual_pair_split needs a 4-phase matrix, got p = " +
                                std::to_string(z.modulus()));
  }
  static constexpr std::int8_t kRe[4] = {1, 0, -1, 0};
  static constexpr std::int8_t kIm[4] = {0, 1, 0, -1};
  std::vector<std::int8_t> re;
  std::vector<std::int8_t> im;
  for (auto e : z.exponents()) {
    re.push_back(kRe[e]);
    im.push_back(kIm[e]);
  }
  return {TernaryMatrix(z.rows(), z.cols(), std::move(re)), TernaryMatrix(z.rows(), z.cols(), std::move(im))};
}

}  // namespace ccm
