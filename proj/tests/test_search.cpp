#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include <gtest/gtest.h>

#include "ccm/archive.hpp"
#include "ccm/correlation.hpp"
#include "ccm/errors.hpp"
#include "ccm/search.hpp"
#include "ccm/symmetry.hpp"
#include "test_support.hpp"

namespace ccm {
namespace {

namespace fs = std::filesystem;

SearchConfig config(int p, int n, int k) {
  SearchConfig cfg;
  cfg.p = p;
  cfg.n_rows = n;
  cfg.n_cols = k;
  return cfg;
}

std::set<PhaseMatrix> canonical_set(const std::vector<PhaseMatrix>& ms) {
  std::set<PhaseMatrix> out;
  for (const auto& m : ms) out.insert(canonical_form(m));
  return out;
}

std::set<PhaseMatrix> normalized_set(const std::vector<PhaseMatrix>& ms) {
  std::set<PhaseMatrix> out;
  for (const auto& m : ms) out.insert(normalize(m).matrix);
  return out;
}

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("ccm_test_" + std::to_string(::getpid()) + "_" + name);
}

TEST(Search, RawCountsQuadFourColumns) {
  const std::vector<std::pair<int, std::size_t>> expected{{2, 36}, {3, 95}, {4, 231}, {5, 5246}, {6, 23448}};
  for (auto [n, count] : expected) {
    const auto res = search_ccm(config(4, n, 4));
    EXPECT_EQ(res.matrices.size(), count) << "N = " << n;
  }
}

TEST(Search, OutputIsSoundSortedAndNormalized) {
  for (int n = 2; n <= 5; ++n) {
    const auto res = search_ccm(config(4, n, 4));
    EXPECT_TRUE(std::is_sorted(res.matrices.begin(), res.matrices.end()));
    EXPECT_EQ(std::adjacent_find(res.matrices.begin(), res.matrices.end()), res.matrices.end());
    for (const auto& m : res.matrices) {
      // N = 2 keeps every zero-sum second row, so only the first row is fixed.
      for (int c = 0; c < m.cols(); ++c) ASSERT_EQ(m.at(0, c), 0) << format_matrix(m);
      if (n > 2) ASSERT_TRUE(is_normalized(m)) << format_matrix(m);
      ASSERT_TRUE(test::oracle_is_ccm(m)) << format_matrix(m);
    }
  }
}

TEST(Search, BruteForceMatchesFloatingOracle) {
  for (auto [p, n, k] : std::vector<std::tuple<int, int, int>>{{4, 2, 4}, {2, 4, 4}, {2, 3, 5}, {3, 3, 3}, {4, 3, 2}}) {
    EXPECT_EQ(brute_force_ccm(p, n, k), test::oracle_all_ccms(p, n, k)) << p << " " << n << " " << k;
  }
}

void expect_complete(int p, int n, int k, const std::vector<PhaseMatrix>& all) {
  const auto pruned = search_ccm(config(p, n, k)).matrices;
  EXPECT_EQ(canonical_set(pruned), canonical_set(all)) << p << " " << n << " " << k;

  SearchConfig open = config(p, n, k);
  open.prune_reversal = false;
  open.prune_sorted_rows = false;
  EXPECT_EQ(normalized_set(search_ccm(open).matrices), normalized_set(all)) << p << " " << n << " " << k;
}

TEST(Search, CompleteAgainstOracleSmallShapes) {
  expect_complete(4, 2, 4, test::oracle_all_ccms(4, 2, 4));
  for (int n = 2; n <= 4; ++n) {
    for (int k = 1; n * k <= 16; ++k) expect_complete(2, n, k, test::oracle_all_ccms(2, n, k));
  }
  expect_complete(3, 3, 3, test::oracle_all_ccms(3, 3, 3));
  expect_complete(6, 2, 3, test::oracle_all_ccms(6, 2, 3));
}

TEST(Search, CompleteAgainstBruteForceThreeByFour) {
  const auto all = brute_force_ccm(4, 3, 4);
  expect_complete(4, 3, 4, all);
  EXPECT_EQ(normalized_set(all).size(), 342U);
}

TEST(Search, UnprunedNormalizedCounts) {
  const std::vector<std::pair<int, std::size_t>> expected{{3, 342}, {4, 4200}, {5, 65904}};
  for (auto [n, count] : expected) {
    SearchConfig cfg = config(4, n, 4);
    cfg.prune_reversal = false;
    cfg.prune_sorted_rows = false;
    const auto res = search_ccm(cfg);
    EXPECT_EQ(res.matrices.size(), count) << "N = " << n;
  }
}

TEST(Search, PruningKeepsEveryClass) {
  for (auto [p, n, k] : std::vector<std::tuple<int, int, int>>{
           {4, 4, 4}, {4, 5, 4}, {4, 5, 3}, {4, 6, 2}, {2, 6, 4}, {3, 4, 3}, {2, 7, 2}, {4, 7, 2}}) {
    SearchConfig open = config(p, n, k);
    open.prune_reversal = false;
    open.prune_sorted_rows = false;
    const auto full = canonical_set(search_ccm(open).matrices);
    for (int mode = 1; mode < 4; ++mode) {
      SearchConfig cfg = config(p, n, k);
      cfg.prune_reversal = (mode & 1) != 0;
      cfg.prune_sorted_rows = (mode & 2) != 0;
      EXPECT_EQ(canonical_set(search_ccm(cfg).matrices), full) << p << " " << n << " " << k << " mode " << mode;
    }
  }
}

TEST(Search, ClassOutputIsCanonicalAndDistinct) {
  SearchConfig cfg = config(4, 4, 4);
  cfg.emit_raw = false;
  const auto res = search_ccm(cfg);
  EXPECT_EQ(res.matrices.size(), 24U);
  for (const auto& m : res.matrices) EXPECT_EQ(canonical_form(m), m);
}

TEST(Search, ParallelMatchesSerial) {
  for (int n : {4, 5}) {
    SearchConfig one = config(4, n, 4);
    SearchConfig many = one;
    many.jobs = 8;
    const auto a = search_ccm(one);
    const auto b = search_ccm(many);
    EXPECT_EQ(a.matrices, b.matrices);
    EXPECT_EQ(a.nodes, b.nodes);
    EXPECT_EQ(a.branches, b.branches);
  }
}

TEST(Search, RepeatedRunsAreIdentical) {
  const auto a = search_ccm(config(4, 5, 4));
  const auto b = search_ccm(config(4, 5, 4));
  EXPECT_EQ(a.matrices, b.matrices);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(Search, CheckpointResume) {
  const fs::path path = temp_file("checkpoint.jsonl");
  fs::remove(path);
  SearchConfig cfg = config(4, 5, 4);
  cfg.checkpoint_path = path.string();
  const auto first = search_ccm(cfg);
  EXPECT_EQ(first.resumed_branches, 0U);
  ASSERT_TRUE(fs::exists(path));

  const auto second = search_ccm(cfg);
  EXPECT_EQ(second.resumed_branches, first.branches);
  EXPECT_EQ(second.matrices, first.matrices);

  // Keep the header and a third of the branches, then a torn final line.
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  }
  ASSERT_GT(lines.size(), 3U);
  const std::size_t keep = 1 + (lines.size() - 1) / 3;
  {
    std::ofstream out(path, std::ios::trunc);
    for (std::size_t i = 0; i < keep; ++i) out << lines[i] << '\n';
    out << lines[keep].substr(0, lines[keep].size() / 2);
  }
  const auto third = search_ccm(cfg);
  EXPECT_EQ(third.resumed_branches, keep - 1);
  EXPECT_EQ(third.matrices, first.matrices);

  SearchConfig other = config(4, 4, 4);
  other.checkpoint_path = path.string();
  EXPECT_THROW(search_ccm(other), std::runtime_error);
  fs::remove(path);
}

TEST(Search, ProgressCallback) {
  SearchConfig cfg = config(4, 5, 4);
  std::uint64_t calls = 0;
  std::uint64_t last_found = 0;
  cfg.progress_interval = 1;
  cfg.on_progress = [&](const ProgressRecord& r) {
    ++calls;
    last_found = std::max(last_found, r.found);
  };
  const auto res = search_ccm(cfg);
  EXPECT_GT(calls, 0U);
  EXPECT_LE(last_found, res.matrices.size());
}

TEST(Search, Guards) {
  if (guard_override_enabled()) GTEST_SKIP() << "guard override set";
  EXPECT_THROW(search_ccm(config(4, 8, 5)), GuardExceeded);  // 80 bits
  EXPECT_THROW(search_ccm(config(36, 2, 5)), GuardExceeded);  // 36^5 rows
  EXPECT_THROW(brute_force_ccm(4, 4, 4), GuardExceeded);
  EXPECT_THROW(search_ccm(config(4, 0, 4)), std::invalid_argument);
}

TEST(Search, DegenerateShapes) {
  const auto one = search_ccm(config(4, 1, 3));
  ASSERT_EQ(one.matrices.size(), 1U);
  EXPECT_EQ(one.matrices.front(), PhaseMatrix::ones(4, 1, 3));
  EXPECT_TRUE(search_ccm(config(4, 2, 1)).matrices.empty());
  EXPECT_TRUE(search_ccm(config(3, 2, 2)).matrices.empty());
}

TEST(Search, ZeroSumTuples) {
  for (auto [p, k] : std::vector<std::pair<int, int>>{{4, 4}, {3, 3}, {6, 4}, {2, 6}, {5, 5}}) {
    std::vector<Row> want;
    for (const auto& m : test::oracle_all_ccms(p, 1, k)) {
      const auto z = test::to_complex(m);
      std::complex<double> s = 0;
      for (auto v : z) s += v;
      if (std::abs(s) < 1e-9) want.emplace_back(m.row(0).begin(), m.row(0).end());
    }
    EXPECT_EQ(zero_sum_tuples(p, k), want) << p << " " << k;
  }
}

TEST(Search, IncreasingExponentRows) {
  const auto set = increasing_exponent_rows({0, 0, 1}, 4);
  EXPECT_EQ(set.candidates.size(), 40U);
  EXPECT_TRUE(std::is_sorted(set.candidates.begin(), set.candidates.end()));
  for (const auto& r : set.candidates) EXPECT_LE(r[0], r[1]);
  EXPECT_EQ(increasing_exponent_rows({0, 0, 0, 0}, 4).candidates.size(), 35U);
  EXPECT_EQ(increasing_exponent_rows({0, 1, 2, 3}, 4).candidates.size(), 256U);
}

std::vector<TernaryMatrix> oracle_ternary(int n, int k) {
  const int cells = n * k;
  std::vector<std::int8_t> e(static_cast<std::size_t>(cells), -1);
  std::vector<TernaryMatrix> out;
  for (;;) {
    bool ok = true;
    for (int lag = 1; lag < n && ok; ++lag) {
      long s = 0;
      for (int c = 0; c < k; ++c)
        for (int i = 0; i + lag < n; ++i) s += e[static_cast<std::size_t>(i * k + c)] * e[static_cast<std::size_t>((i + lag) * k + c)];
      ok = s == 0;
    }
    if (ok) out.emplace_back(n, k, e);
    int pos = cells - 1;
    while (pos >= 0 && ++e[static_cast<std::size_t>(pos)] == 2) e[static_cast<std::size_t>(pos--)] = -1;
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return format_matrix(a) < format_matrix(b); });
  return out;
}

TEST(Search, TernaryMatchesOracle) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 2}, {2, 5}, {3, 4}}) {
    const auto got = search_ternary_ccm(n, k);
    EXPECT_EQ(got, oracle_ternary(n, k)) << n << "x" << k;
    for (const auto& t : got) EXPECT_TRUE(ternary_is_ccm(t));
  }
}

}  // namespace
}  // namespace ccm
