// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "ccm/archive.hpp"
#include "ccm/classify.hpp"
#include "ccm/construct.hpp"
#include "ccm/correlation.hpp"
#include "ccm/search.hpp"
#include "ccm/symmetry.hpp"
#include "test_support.hpp"

using namespace ccm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

template <class A, class B>
void expect_eq(Outcome& o, const A& got, const B& want, const std::string& what) {
  if (!(got == want)) {
    std::ostringstream s;
    s << what << ": got " << got << ", want " << want;
    expect(o, false, s.str());
  }
}

SearchConfig config(int p, int n, int k, int jobs = 1) {
  SearchConfig cfg;
  cfg.p = p;
  cfg.n_rows = n;
  cfg.n_cols = k;
  cfg.jobs = jobs;
  return cfg;
}

std::set<PhaseMatrix> canonical_set(const std::vector<PhaseMatrix>& ms) {
  std::set<PhaseMatrix> out;
  for (const auto& m : ms) out.insert(canonical_form(m));
  return out;
}

// Search and census for 4-phase N×4, computed once.
struct Census {
  std::vector<PhaseMatrix> raw;
  std::vector<ClassRecord> classes;
  CensusSummary summary;
};

const Census& census(int n) {
  static std::map<int, Census> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    Census c;
    c.raw = search_ccm(config(4, n, 4)).matrices;
    c.classes = classify_census(c.raw, build_factor_pool(4, n, 4));
    c.summary = summarize(c.classes);
    it = cache.emplace(n, std::move(c)).first;
  }
  return it->second;
}

const std::vector<int> kRows{2, 3, 4, 5, 6};

Outcome census_classes() {
  Outcome o;
  const std::vector<std::uint64_t> want{2, 5, 24, 133, 1448};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    expect_eq(o, census(kRows[i]).summary.classes, want[i], std::to_string(kRows[i]) + "x4 classes");
  }
  return o;
}

Outcome census_hadamard() {
  Outcome o;
  const std::vector<std::uint64_t> want{2, 5, 17, 0, 0};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    expect_eq(o, census(kRows[i]).summary.hadamard, want[i], std::to_string(kRows[i]) + "x4 hadamard");
  }
  return o;
}

Outcome census_constructions() {
  Outcome o;
  const std::vector<std::uint64_t> dual{2, 5, 22, 94, 471};
  const std::vector<std::uint64_t> concat{2, 1, 6, 3, 27};
  const std::vector<std::uint64_t> kron{0, 0, 2, 0, 2};
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    const auto& s = census(kRows[i]).summary;
    const std::string tag = std::to_string(kRows[i]) + "x4 ";
    expect_eq(o, s.dual_pair, dual[i], tag + "dual pair");
    expect_eq(o, s.concatenation, concat[i], tag + "concatenation");
    expect_eq(o, s.kronecker, kron[i], tag + "kronecker");
  }
  std::ostringstream d;
  d << "kronecker with single-row factors:";
  for (int n : kRows) d << ' ' << census(n).summary.kronecker_inclusive;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome raw_counts() {
  Outcome o;
  const std::vector<std::size_t> want{36, 95, 231, 5246, 23448};
  std::ostringstream d;
  for (std::size_t i = 0; i < kRows.size(); ++i) {
    const auto got = census(kRows[i]).raw.size();
    d << (i ? " " : "raw ") << got;
    expect_eq(o, got, want[i], std::to_string(kRows[i]) + "x4 raw");
  }
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome representatives() {
  Outcome o;
  for (int n : {2, 3, 4}) {
    std::set<PhaseMatrix> computed;
    for (const auto& r : census(n).classes) computed.insert(r.canonical);
    std::set<PhaseMatrix> published;
    const auto reps = test::published_representatives(n);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const std::string tag = std::to_string(n) + "x4 #" + std::to_string(i + 1);
      expect(o, is_ccm(reps[i]), tag + " is not a CCM");
      expect(o, published.insert(canonical_form(reps[i])).second, tag + " duplicates a class");
      if (n == 4) {
        expect(o, class_has_dual_pair(reps[i]).has_value() == (i < 22), tag + " dual-pair flag");
      }
    }
    expect(o, published == computed, std::to_string(n) + "x4 classes do not biject");
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::vector<std::tuple<int, int, int>> shapes{{4, 2, 4}, {4, 3, 4}};
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k) shapes.emplace_back(2, n, k);
  for (auto [p, n, k] : shapes) {
    const auto brute = canonical_set(brute_force_ccm(p, n, k));
    const auto pruned = canonical_set(search_ccm(config(p, n, k)).matrices);
    expect(o, brute == pruned,
           "p=" + std::to_string(p) + " " + std::to_string(n) + "x" + std::to_string(k) + " class sets differ");
  }
  return o;
}

Outcome group_law() {
  Outcome o;
  using G = Generator;
  std::mt19937 rng(2718);
  auto rv = [&](int size, int mod) { return test::random_vector(rng, size, mod); };
  auto rp = [&](int size) { return test::random_permutation(rng, size); };
  const int p = 4;
  const int n = 4;
  const int k = 4;
  using Maker = std::function<std::pair<Word, Word>()>;
  const std::vector<std::pair<std::string, Maker>> relations{
      {"PS=SP", [&] { auto s = rp(k); return std::pair<Word, Word>{{G::perm(s), G::conj()}, {G::conj(), G::perm(s)}}; }},
      {"CS=SC", [&] { auto u = rv(k, p); return std::pair<Word, Word>{{G::col_mult(u), G::conj()}, {G::conj(), G::col_mult(conj_multipliers(u, p))}}; }},
      {"CP=PC", [&] { auto u = rv(k, p); auto s = rp(k); return std::pair<Word, Word>{{G::col_mult(u), G::perm(s)}, {G::perm(s), G::col_mult(permuted_multipliers(u, s))}}; }},
      {"RS=SR", [&] { auto t = rv(k, 2); return std::pair<Word, Word>{{G::reversal(t), G::conj()}, {G::conj(), G::reversal(t)}}; }},
      {"RP=PR", [&] { auto t = rv(k, 2); auto s = rp(k); return std::pair<Word, Word>{{G::reversal(t), G::perm(s)}, {G::perm(s), G::reversal(permuted_mask(t, s))}}; }},
      {"RC=CR", [&] { auto t = rv(k, 2); auto u = rv(k, p); return std::pair<Word, Word>{{G::reversal(t), G::col_mult(u)}, {G::col_mult(masked_conj_multipliers(u, t, p)), G::reversal(t)}}; }},
      {"QS=SQ", [&] { int b = rv(1, p)[0]; return std::pair<Word, Word>{{G::prog(b), G::conj()}, {G::conj(), G::prog(mod_p(-b, p))}}; }},
      {"QP=PQ", [&] { int b = rv(1, p)[0]; auto s = rp(k); return std::pair<Word, Word>{{G::prog(b), G::perm(s)}, {G::perm(s), G::prog(b)}}; }},
      {"QC=CQ", [&] { int b = rv(1, p)[0]; auto u = rv(k, p); return std::pair<Word, Word>{{G::prog(b), G::col_mult(u)}, {G::col_mult(u), G::prog(b)}}; }},
      {"QR=CRQ", [&] { int b = rv(1, p)[0]; auto t = rv(k, 2); return std::pair<Word, Word>{{G::prog(b), G::reversal(t)}, {G::col_mult(reversal_multipliers(t, b, n, p)), G::reversal(t), G::prog(b)}}; }},
  };
  for (const auto& [name, make] : relations) {
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      const auto m = test::random_matrix(rng, p, n, k);
      const auto [lhs, rhs] = make();
      bad += ccm::apply(lhs, m) != ccm::apply(rhs, m);
    }
    expect(o, bad == 0, name + " failed " + std::to_string(bad) + " times");
  }

  std::uint64_t count = 0;
  for_each_element(4, 4, 4, [&](const SymmetryElement&) { ++count; });
  expect_eq(o, count, std::uint64_t{786432}, "normal-form count");

  int bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto a = test::random_element(rng, p, n, k);
    const auto b = test::random_element(rng, p, n, k);
    const auto c = test::random_element(rng, p, n, k);
    const auto m = test::random_matrix(rng, p, n, k);
    bad += ccm::apply(compose(compose(a, b), c), m) != ccm::apply(a, ccm::apply(b, ccm::apply(c, m)));
    bad += ccm::apply(compose(a, compose(b, c)), m) != ccm::apply(a, ccm::apply(b, ccm::apply(c, m)));
  }
  expect(o, bad == 0, "compose not associative on " + std::to_string(bad) + " triples");

  // Each generator family on every census CCM up to 4x4.
  std::size_t checked = 0;
  for (int rows = 2; rows <= 4; ++rows) {
    for (const auto& m : census(rows).raw) {
      Word gens{G::conj(), G::prog(1)};
      for (int c = 0; c < k; ++c) {
        std::vector<int> unit(k, 0);
        unit[static_cast<std::size_t>(c)] = 1;
        gens.push_back(G::col_mult(unit));
        gens.push_back(G::reversal(unit));
        if (c + 1 < k) {
          std::vector<int> sigma{0, 1, 2, 3};
          std::swap(sigma[static_cast<std::size_t>(c)], sigma[static_cast<std::size_t>(c + 1)]);
          gens.push_back(G::perm(sigma));
        }
      }
      for (const auto& g : gens) {
        ++checked;
        expect(o, is_ccm(ccm::apply(g, m)), "generator broke " + format_matrix(m));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " generator images checked";
  return o;
}

Outcome worked_examples() {
  Outcome o;
  auto gauss = [](const CycSum& s) { return s.gaussian().value_or(std::pair<std::int64_t, std::int64_t>{99, 99}); };
  using P = std::pair<std::int64_t, std::int64_t>;

  // Three-term quad code; printed values sit at mirrored lags under
  // A(j) = sum a_i conj(a_{i+j}).
  const PhaseCode x(4, {2, 2, 3});
  const std::vector<P> printed{{0, -1}, {1, -1}, {3, 0}, {1, 1}, {0, 1}};
  for (int j = -2; j <= 2; ++j) {
    expect(o, gauss(autocorrelation(x, -j)) == printed[static_cast<std::size_t>(j + 2)],
           "quad code lag " + std::to_string(j));
  }

  const PhaseCode barker(2, {0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0});
  for (int j = -12; j <= 12; ++j) {
    const std::int64_t want = j == 0 ? 13 : (j % 2 == 0 ? 1 : 0);
    expect(o, gauss(autocorrelation(barker, j)) == P{want, 0}, "barker lag " + std::to_string(j));
  }

  const PhaseMatrix golay(2, {{0, 0}, {0, 0}, {1, 0}, {0, 1}});
  for (int j = -3; j <= 3; ++j) {
    expect(o, gauss(composite_autocorrelation(golay, j)) == P{j == 0 ? 8 : 0, 0}, "golay lag " + std::to_string(j));
  }

  const auto q = row_gramian(PhaseMatrix(2, {{0, 0, 0, 0}, {0, 1, 1, 1}, {0, 0, 1, 1}}));
  const std::vector<std::int64_t> gram{4, -2, 0, -2, 4, 2, 0, 2, 4};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      expect(o, gauss(q.at(i, j)) == P{gram[static_cast<std::size_t>(i * 3 + j)], 0}, "row gramian entry");

  const PhaseMatrix m(4, {{2, 2, 3, 2}, {3, 3, 0, 0}, {2, 2, 0, 0}, {1, 3, 2, 3}});
  const PhaseMatrix m1 = ccm::apply(Generator::col_mult({3, 3, 2, 3}), m);
  const PhaseMatrix m2 = ccm::apply(Generator::prog(3), m1);
  expect(o, m1 == PhaseMatrix(4, {{1, 1, 1, 1}, {2, 2, 2, 3}, {1, 1, 2, 3}, {0, 2, 0, 2}}), "normalization step 1");
  expect(o, m2 == test::quad("[[1,1,1,1],[1,1,1,i],[-1,-1,-i,1],[1,-1,1,-1]]"), "normalization step 2");
  expect(o, normalize(m).matrix == m2 && is_ccm(m2), "normalize");

  const auto z = test::quad("[[-1,-1,-i,-i],[-i,-i,i,i],[i,-i,-1,1],[i,-i,i,-i]]");
  const auto [a, b] = dual_pair_split(z);
  expect(o, a == TernaryMatrix{{-1, -1, 0, 0}, {0, 0, 0, 0}, {0, 0, -1, 1}, {0, 0, 0, 0}}, "dual pair A");
  expect(o, b == TernaryMatrix{{0, 0, -1, -1}, {-1, -1, 1, 1}, {1, -1, 0, 0}, {1, -1, 1, -1}}, "dual pair B");
  expect(o, dual_pair_combine(a, b) == z, "dual pair combine");
  if (o.pass) o.detail = "quad-code values compared at mirrored lags";
  return o;
}

Outcome dual_theorem() {
  Outcome o;
  std::size_t combined = 0;
  for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}}) {
    const int cells = n * k;
    std::vector<Exponent> e(static_cast<std::size_t>(cells), 0);
    for (;;) {
      const PhaseMatrix z(4, n, k, e);
      const auto [a, b] = dual_pair_split(z);
      const auto qz = row_gramian(z);
      const auto qa = ternary_gramian(a);
      const auto qb = ternary_gramian(b);
      const auto cross = dual_cross_term(a, b);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const auto g = qz.at(i, j).gaussian();
          expect(o, g && g->first == qa.at(i, j) + qb.at(i, j) && g->second == cross.at(i, j),
                 "gramian identity " + format_matrix(z));
        }
      if (ternary_is_ccm(a) && ternary_is_ccm(b) && is_diagonally_regular(cross)) {
        expect(o, dual_pair_combine(a, b) == z && test::oracle_is_ccm(z), "combine " + format_matrix(z));
        ++combined;
      }
      int pos = cells - 1;
      while (pos >= 0 && ++e[static_cast<std::size_t>(pos)] == 4) e[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
  }
  if (o.pass) o.detail = std::to_string(combined) + " pairs combined";
  return o;
}

std::string census_text(int jobs) {
  const auto raw = search_ccm(config(4, 4, 4, jobs)).matrices;
  std::ostringstream s;
  write_archive(s, raw);
  for (const auto& r : classify_census(raw, build_factor_pool(4, 4, 4), jobs)) {
    s << format_matrix(r.canonical) << ',' << r.orbit_size << ',' << r.has_hadamard << ',' << r.has_dual_pair
      << ',' << r.has_kronecker << ',' << r.has_concatenation << '\n';
  }
  return s.str();
}

Outcome determinism() {
  Outcome o;
  expect(o, census_text(1) == census_text(8), "4x4 census differs between 1 and 8 workers");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"census class counts", census_classes},
      {"hadamard counts", census_hadamard},
      {"dual pair, concatenation and kronecker counts", census_constructions},
      {"raw search counts", raw_counts},
      {"published representatives", representatives},
      {"brute-force oracle equivalence", oracle_equivalence},
      {"group law", group_law},
      {"worked examples", worked_examples},
      {"dual pair theorem", dual_theorem},
      {"determinism across workers", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << " [" << std::fixed << std::setprecision(1) << secs << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
