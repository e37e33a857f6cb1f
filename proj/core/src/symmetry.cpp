#include "ccm/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "ccm/errors.hpp"

namespace ccm {

bool guard_override_enabled() {
  const char* v = std::getenv("CCM_GUARD_OVERRIDE");
  return v != nullptr && std::string_view(v) == "1";
}

namespace {

constexpr std::uint64_t kOrbitGuard = 10'000'000;

using Kind = Generator::Kind;

void check_shape(const SymmetryElement& g, const PhaseMatrix& m) {
  if (g.p != m.modulus() || g.n_cols != m.cols() || g.n_rows != m.rows()) {
    throw std::invalid_argument("symmetry element and matrix disagree on p, N or K");
  }
}

void check_compatible(const SymmetryElement& g, const SymmetryElement& h) {
  if (g.p != h.p || g.n_rows != h.n_rows || g.n_cols != h.n_cols) {
    throw std::invalid_argument("symmetry elements disagree on p, N or K");
  }
}

char digit_char(int d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Sorts the columns of a row-major N×K exponent block lexicographically
// (top entry most significant) into `out`.
void sort_columns(const std::vector<int>& block, int n, int k, std::vector<int>& order,
                  std::vector<Exponent>& out) {
  order.resize(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    for (int r = 0; r < n; ++r) {
      const int va = block[static_cast<std::size_t>(r * k + a)];
      const int vb = block[static_cast<std::size_t>(r * k + b)];
      if (va != vb) return va < vb;
    }
    return false;
  });
  out.resize(block.size());
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < k; ++c) {
      out[static_cast<std::size_t>(r * k + c)] =
          static_cast<Exponent>(block[static_cast<std::size_t>(r * k + order[static_cast<std::size_t>(c)])]);
    }
  }
}

// Y = ρ_T Q(b) M, with every column then rotated so its first entry is 0.
void reversed_progressive_normalized(const PhaseMatrix& m, unsigned mask, int b,
                                     std::vector<int>& y) {
  const int n = m.rows();
  const int k = m.cols();
  const int p = m.modulus();
  y.resize(static_cast<std::size_t>(n * k));
  for (int c = 0; c < k; ++c) {
    const bool rev = (mask >> c) & 1U;
    for (int r = 0; r < n; ++r) {
      int v;
      if (rev) {
        v = -(m.at(n - 1 - r, c) + b * (n - r));
      } else {
        v = m.at(r, c) + b * (r + 1);
      }
      y[static_cast<std::size_t>(r * k + c)] = v;
    }
    const int first = y[static_cast<std::size_t>(c)];
    for (int r = 0; r < n; ++r) {
      auto& v = y[static_cast<std::size_t>(r * k + c)];
      v = mod_p(v - first, p);
    }
  }
}

}  // namespace

SymmetryElement SymmetryElement::identity(int p, int n_rows, int n_cols) {
  SymmetryElement g;
  g.p = p;
  g.n_rows = n_rows;
  g.n_cols = n_cols;
  g.perm.resize(static_cast<std::size_t>(n_cols));
  std::iota(g.perm.begin(), g.perm.end(), 0);
  g.col_mult.assign(static_cast<std::size_t>(n_cols), 0);
  g.rev_mask.assign(static_cast<std::size_t>(n_cols), 0);
  return g;
}

std::string to_string(const SymmetryElement& g) {
  std::string out = "S:";
  out += g.conj ? '1' : '0';
  out += " P:";
  for (int k = 0; k < g.n_cols; ++k) {
    if (g.n_cols > 9 && k > 0) out += ',';
    out += std::to_string(g.perm[static_cast<std::size_t>(k)] + 1);
  }
  out += " U:";
  for (int u : g.col_mult) out += digit_char(u);
  out += " T:";
  for (int t : g.rev_mask) out += t ? '1' : '0';
  out += " Q:";
  out += digit_char(g.prog);
  return out;
}

SymmetryElement parse_symmetry(std::string_view text, int p, int n_rows) {
  std::istringstream in{std::string(text)};
  std::string s_tok, p_tok, u_tok, t_tok, q_tok;
  if (!(in >> s_tok >> p_tok >> u_tok >> t_tok >> q_tok) || s_tok.rfind("S:", 0) != 0 ||
      p_tok.rfind("P:", 0) != 0 || u_tok.rfind("U:", 0) != 0 || t_tok.rfind("T:", 0) != 0 ||
      q_tok.rfind("Q:", 0) != 0) {
    throw std::invalid_argument("malformed symmetry element '" + std::string(text) + "'");
  }
  const std::string u = u_tok.substr(2);
  const std::string t = t_tok.substr(2);
  const int k = static_cast<int>(u.size());
  SymmetryElement g = SymmetryElement::identity(p, n_rows, k);
  g.conj = s_tok.substr(2) == "1";
  const std::string perm = p_tok.substr(2);
  std::vector<int> sigma;
  if (k > 9) {
    std::istringstream ps(perm);
    std::string item;
    while (std::getline(ps, item, ',')) sigma.push_back(std::stoi(item) - 1);
  } else {
    for (char c : perm) sigma.push_back(c - '1');
  }
  std::vector<int> check = sigma;
  std::sort(check.begin(), check.end());
  std::vector<int> ident(static_cast<std::size_t>(k));
  std::iota(ident.begin(), ident.end(), 0);
  if (static_cast<int>(t.size()) != k || check != ident) {
    throw std::invalid_argument("malformed symmetry element '" + std::string(text) + "'");
  }
  g.perm = sigma;
  for (int i = 0; i < k; ++i) {
    const int d = digit_value(u[static_cast<std::size_t>(i)]);
    if (d < 0 || d >= p) throw std::invalid_argument("bad multiplier digit");
    g.col_mult[static_cast<std::size_t>(i)] = d;
    const char tc = t[static_cast<std::size_t>(i)];
    if (tc != '0' && tc != '1') throw std::invalid_argument("bad reversal bit");
    g.rev_mask[static_cast<std::size_t>(i)] = tc - '0';
  }
  const std::string q = q_tok.substr(2);
  const int b = q.size() == 1 ? digit_value(q[0]) : -1;
  if (b < 0 || b >= p) throw std::invalid_argument("bad progressive digit");
  g.prog = b;
  return g;
}

PhaseMatrix apply(const Generator& g, const PhaseMatrix& m) {
  const int n = m.rows();
  const int k = m.cols();
  const int p = m.modulus();
  PhaseMatrix out = m;
  switch (g.kind) {
    case Kind::kConj:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) out.set(r, c, -m.at(r, c));
      break;
    case Kind::kPerm:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) out.set(r, c, m.at(r, g.data[static_cast<std::size_t>(c)]));
      break;
    case Kind::kColMult:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) out.set(r, c, m.at(r, c) + g.data[static_cast<std::size_t>(c)]);
      break;
    case Kind::kReversal:
      for (int c = 0; c < k; ++c) {
        if (!g.data[static_cast<std::size_t>(c)]) continue;
        for (int r = 0; r < n; ++r) out.set(r, c, -m.at(n - 1 - r, c));
      }
      break;
    case Kind::kProg:
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) out.set(r, c, m.at(r, c) + mod_p(g.value * (r + 1), p));
      break;
  }
  return out;
}

PhaseMatrix apply(const Word& w, const PhaseMatrix& m) {
  PhaseMatrix out = m;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = apply(*it, out);
  return out;
}

PhaseMatrix apply(const SymmetryElement& g, const PhaseMatrix& m) {
  check_shape(g, m);
  const int n = m.rows();
  const int k = m.cols();
  const int p = m.modulus();
  std::vector<Exponent> out(static_cast<std::size_t>(n * k));
  // Fused S · P · C_U · ρ_T · Q(b): output column c draws from source column σ(c).
  for (int c = 0; c < k; ++c) {
    const int src = g.perm[static_cast<std::size_t>(c)];
    const bool rev = g.rev_mask[static_cast<std::size_t>(src)] != 0;
    const int u = g.col_mult[static_cast<std::size_t>(src)];
    for (int r = 0; r < n; ++r) {
      int v = rev ? -(m.at(n - 1 - r, src) + g.prog * (n - r)) : m.at(r, src) + g.prog * (r + 1);
      v += u;
      if (g.conj) v = -v;
      out[static_cast<std::size_t>(r * k + c)] = static_cast<Exponent>(mod_p(v, p));
    }
  }
  return PhaseMatrix(p, n, k, std::move(out));
}

Word to_word(const SymmetryElement& g) {
  Word w;
  if (g.conj) w.push_back(Generator::conj());
  w.push_back(Generator::perm(g.perm));
  w.push_back(Generator::col_mult(g.col_mult));
  w.push_back(Generator::reversal(g.rev_mask));
  w.push_back(Generator::prog(g.prog));
  return w;
}

std::vector<int> conj_multipliers(const std::vector<int>& u, int p) {
  std::vector<int> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = mod_p(-u[i], p);
  return out;
}

std::vector<int> permuted_multipliers(const std::vector<int>& u, const std::vector<int>& sigma) {
  std::vector<int> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[static_cast<std::size_t>(sigma[k])] = u[k];
  return out;
}

std::vector<int> permuted_mask(const std::vector<int>& t, const std::vector<int>& sigma) {
  std::vector<int> out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[static_cast<std::size_t>(sigma[k])] = t[k];
  return out;
}

std::vector<int> reversal_multipliers(const std::vector<int>& t, int b, int n_rows, int p) {
  std::vector<int> out(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) out[k] = t[k] ? mod_p(b * (n_rows + 1), p) : 0;
  return out;
}

std::vector<int> masked_conj_multipliers(const std::vector<int>& u, const std::vector<int>& t, int p) {
  std::vector<int> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out[k] = t[k] ? mod_p(-u[k], p) : mod_p(u[k], p);
  return out;
}

SymmetryElement normal_form(const Word& word, int p, int n_rows, int n_cols) {
  Word w = word;
  auto rank = [](const Generator& g) { return static_cast<int>(g.kind); };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      Generator& x = w[i];
      Generator& y = w[i + 1];
      if (x.kind == y.kind) {
        switch (x.kind) {
          case Kind::kConj:
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
          case Kind::kPerm: {
            // P_σ P_τ = P_{τ∘σ}
            std::vector<int> merged(x.data.size());
            for (std::size_t k = 0; k < merged.size(); ++k) {
              merged[k] = y.data[static_cast<std::size_t>(x.data[k])];
            }
            x.data = std::move(merged);
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i + 1));
            break;
          }
          case Kind::kColMult:
            for (std::size_t k = 0; k < x.data.size(); ++k) x.data[k] = mod_p(x.data[k] + y.data[k], p);
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i + 1));
            break;
          case Kind::kReversal:
            for (std::size_t k = 0; k < x.data.size(); ++k) x.data[k] ^= y.data[k];
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i + 1));
            break;
          case Kind::kProg:
            x.value = mod_p(x.value + y.value, p);
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i + 1));
            break;
        }
        changed = true;
        break;
      }
      if (rank(x) <= rank(y)) continue;

      Generator left = y;
      Generator right = x;
      std::vector<Generator> extra;  // inserted before `left`
      switch (x.kind) {
        case Kind::kPerm:  // y = S
          break;
        case Kind::kColMult:
          if (y.kind == Kind::kConj) {
            right.data = conj_multipliers(x.data, p);
          } else {  // y = P
            right.data = permuted_multipliers(x.data, y.data);
          }
          break;
        case Kind::kReversal:
          if (y.kind == Kind::kPerm) {
            right.data = permuted_mask(x.data, y.data);
          } else if (y.kind == Kind::kColMult) {
            left.data = masked_conj_multipliers(y.data, x.data, p);
          }
          break;
        case Kind::kProg:
          if (y.kind == Kind::kConj) {
            right.value = mod_p(-x.value, p);
          } else if (y.kind == Kind::kReversal) {
            extra.push_back(Generator::col_mult(reversal_multipliers(y.data, x.value, n_rows, p)));
          }
          break;
        case Kind::kConj:
          break;
      }
      std::vector<Generator> replacement = std::move(extra);
      replacement.push_back(std::move(left));
      replacement.push_back(std::move(right));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + 2));
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(i), replacement.begin(), replacement.end());
      changed = true;
      break;
    }
  }

  SymmetryElement g = SymmetryElement::identity(p, n_rows, n_cols);
  for (const auto& x : w) {
    switch (x.kind) {
      case Kind::kConj: g.conj = true; break;
      case Kind::kPerm: g.perm = x.data; break;
      case Kind::kColMult:
        for (int k = 0; k < n_cols; ++k) g.col_mult[static_cast<std::size_t>(k)] = mod_p(x.data[static_cast<std::size_t>(k)], p);
        break;
      case Kind::kReversal:
        for (int k = 0; k < n_cols; ++k) g.rev_mask[static_cast<std::size_t>(k)] = x.data[static_cast<std::size_t>(k)] & 1;
        break;
      case Kind::kProg: g.prog = mod_p(x.value, p); break;
    }
  }
  return g;
}

SymmetryElement compose(const SymmetryElement& g, const SymmetryElement& h) {
  check_compatible(g, h);
  Word w = to_word(g);
  const Word wh = to_word(h);
  w.insert(w.end(), wh.begin(), wh.end());
  return normal_form(w, g.p, g.n_rows, g.n_cols);
}

SymmetryElement inverse(const SymmetryElement& g) {
  std::vector<int> sigma_inv(g.perm.size());
  for (std::size_t k = 0; k < g.perm.size(); ++k) sigma_inv[static_cast<std::size_t>(g.perm[k])] = static_cast<int>(k);
  Word w;
  w.push_back(Generator::prog(mod_p(-g.prog, g.p)));
  w.push_back(Generator::reversal(g.rev_mask));
  w.push_back(Generator::col_mult(conj_multipliers(g.col_mult, g.p)));
  w.push_back(Generator::perm(sigma_inv));
  if (g.conj) w.push_back(Generator::conj());
  return normal_form(w, g.p, g.n_rows, g.n_cols);
}

std::uint64_t group_order_bound(int p, int n_cols) {
  return 2 * factorial(n_cols) * ipow(static_cast<std::uint64_t>(p), n_cols + 1) *
         ipow(2, n_cols);
}

void for_each_element(int p, int n_rows, int n_cols,
                      const std::function<void(const SymmetryElement&)>& visit) {
  SymmetryElement g = SymmetryElement::identity(p, n_rows, n_cols);
  const std::uint64_t n_mult = ipow(static_cast<std::uint64_t>(p), n_cols);
  const unsigned n_mask = 1U << n_cols;
  for (int s = 0; s < 2; ++s) {
    g.conj = s == 1;
    std::iota(g.perm.begin(), g.perm.end(), 0);
    do {
      for (std::uint64_t ui = 0; ui < n_mult; ++ui) {
        std::uint64_t rest = ui;
        for (int k = n_cols - 1; k >= 0; --k) {
          g.col_mult[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
          rest /= static_cast<std::uint64_t>(p);
        }
        for (unsigned t = 0; t < n_mask; ++t) {
          for (int k = 0; k < n_cols; ++k) g.rev_mask[static_cast<std::size_t>(k)] = (t >> k) & 1U;
          for (int b = 0; b < p; ++b) {
            g.prog = b;
            visit(g);
          }
        }
      }
    } while (std::next_permutation(g.perm.begin(), g.perm.end()));
  }
}

Normalized normalize(const PhaseMatrix& m) {
  const int p = m.modulus();
  const int n = m.rows();
  const int k = m.cols();
  SymmetryElement g = SymmetryElement::identity(p, n, k);
  const int d = n >= 2 ? mod_p(m.at(1, 0) - m.at(0, 0), p) : 0;
  g.prog = mod_p(-d, p);
  for (int c = 0; c < k; ++c) g.col_mult[static_cast<std::size_t>(c)] = mod_p(d - m.at(0, c), p);
  return {apply(g, m), g};
}

bool is_normalized(const PhaseMatrix& m) {
  for (int c = 0; c < m.cols(); ++c) {
    if (m.at(0, c) != 0) return false;
  }
  return m.rows() < 2 || m.at(1, 0) == 0;
}

PhaseMatrix normalize_columns(const PhaseMatrix& m) {
  PhaseMatrix out = m;
  for (int c = 0; c < m.cols(); ++c) {
    const int first = m.at(0, c);
    for (int r = 0; r < m.rows(); ++r) out.set(r, c, m.at(r, c) - first);
  }
  return out;
}

std::vector<PhaseMatrix> orbit_closure(const PhaseMatrix& m) {
  const int p = m.modulus();
  const int k = m.cols();
  Word gens;
  gens.push_back(Generator::conj());
  for (int c = 0; c + 1 < k; ++c) {
    std::vector<int> sigma(static_cast<std::size_t>(k));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[static_cast<std::size_t>(c)], sigma[static_cast<std::size_t>(c + 1)]);
    gens.push_back(Generator::perm(sigma));
  }
  for (int c = 0; c < k; ++c) {
    std::vector<int> unit(static_cast<std::size_t>(k), 0);
    unit[static_cast<std::size_t>(c)] = 1;
    gens.push_back(Generator::col_mult(unit));
    gens.push_back(Generator::reversal(unit));
  }
  if (p > 1) gens.push_back(Generator::prog(1));

  std::unordered_set<PhaseMatrix, PhaseMatrixHash> seen{m};
  std::deque<PhaseMatrix> queue{m};
  while (!queue.empty()) {
    PhaseMatrix cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      PhaseMatrix next = apply(g, cur);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<PhaseMatrix> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PhaseMatrix> orbit_images(const PhaseMatrix& m) {
  std::unordered_set<PhaseMatrix, PhaseMatrixHash> seen;
  for_each_element(m.modulus(), m.rows(), m.cols(),
                   [&](const SymmetryElement& g) { seen.insert(apply(g, m)); });
  std::vector<PhaseMatrix> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

Orbit orbit(const PhaseMatrix& m) {
  const std::uint64_t bound = group_order_bound(m.modulus(), m.cols());
  if (bound > kOrbitGuard && !guard_override_enabled()) {
    throw GuardExceeded("orbit: group has up to " + std::to_string(bound) +
                        " elements, above the 10^7 guard");
  }
  auto closure = orbit_closure(m);
  const auto images = orbit_images(m);
  if (closure != images) {
    throw std::logic_error("orbit: normal-form images (" + std::to_string(images.size()) +
                           ") differ from generator closure (" + std::to_string(closure.size()) + ")");
  }
  Orbit o;
  o.size = closure.size();
  o.canonical = closure.front();
  o.members = std::move(closure);
  return o;
}

PhaseMatrix canonical_form(const PhaseMatrix& m) {
  // Orbit = { C_U · S^s P_σ ρ_T Q(b) M }. For fixed (s, T, b) the least
  // member over (σ, U) has every column rotated to start with exponent 0 and
  // the columns in lexicographic order, so 2·2^K·p candidates suffice.
  const int n = m.rows();
  const int k = m.cols();
  const int p = m.modulus();
  const std::uint64_t candidates = 2ULL * (1ULL << k) * static_cast<std::uint64_t>(p);
  if (k >= 40 || (candidates > kOrbitGuard && !guard_override_enabled())) {
    throw GuardExceeded("canonical_form: too many candidates");
  }
  std::vector<int> y;
  std::vector<int> order;
  std::vector<Exponent> cand;
  std::vector<Exponent> best;
  for (int b = 0; b < p; ++b) {
    for (unsigned mask = 0; mask < (1U << k); ++mask) {
      reversed_progressive_normalized(m, mask, b, y);
      for (int s = 0; s < 2; ++s) {
        if (s == 1) {
          for (auto& v : y) v = mod_p(-v, p);
        }
        sort_columns(y, n, k, order, cand);
        if (best.empty() || cand < best) best = cand;
      }
    }
  }
  return PhaseMatrix(p, n, k, std::move(best));
}

std::uint64_t orbit_size(const PhaseMatrix& m) {
  // Each C-coset {C_U X} has exactly p^K members and is identified by the
  // column-normalized X, so |orbit| = p^K · #{distinct normalized X}.
  const int n = m.rows();
  const int k = m.cols();
  const int p = m.modulus();
  const std::uint64_t work = 2 * factorial(k) * (1ULL << k) * static_cast<std::uint64_t>(p);
  if (work > kOrbitGuard && !guard_override_enabled()) {
    throw GuardExceeded("orbit_size: too many coset representatives");
  }
  struct VecHash {
    std::size_t operator()(const std::vector<Exponent>& v) const noexcept {
      std::uint64_t h = 1469598103934665603ULL;
      for (auto e : v) {
        h ^= e;
        h *= 1099511628211ULL;
      }
      return static_cast<std::size_t>(h);
    }
  };
  std::unordered_set<std::vector<Exponent>, VecHash> cosets;
  std::vector<int> y;
  std::vector<int> sigma(static_cast<std::size_t>(k));
  std::vector<Exponent> rep(static_cast<std::size_t>(n * k));
  for (int b = 0; b < p; ++b) {
    for (unsigned mask = 0; mask < (1U << k); ++mask) {
      reversed_progressive_normalized(m, mask, b, y);
      for (int s = 0; s < 2; ++s) {
        if (s == 1) {
          for (auto& v : y) v = mod_p(-v, p);
        }
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
          for (int r = 0; r < n; ++r) {
            for (int c = 0; c < k; ++c) {
              rep[static_cast<std::size_t>(r * k + c)] =
                  static_cast<Exponent>(y[static_cast<std::size_t>(r * k + sigma[static_cast<std::size_t>(c)])]);
            }
          }
          cosets.insert(rep);
        } while (std::next_permutation(sigma.begin(), sigma.end()));
      }
    }
  }
  return cosets.size() * ipow(static_cast<std::uint64_t>(p), k);
}

}  // namespace ccm
