#include "ccm/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "ccm/archive.hpp"
#include "ccm/correlation.hpp"
#include "ccm/cyclotomic.hpp"
#include "ccm/errors.hpp"
#include "ccm/symmetry.hpp"

namespace ccm {

namespace {

using Counts = std::array<std::int64_t, kMaxModulus>;

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// All p^K rows, indexed so that index order is lexicographic order.
struct RowTable {
  int p = 0;
  int k = 0;
  std::vector<Row> rows;
  std::map<std::vector<std::int64_t>, std::vector<int>> by_sum;

  RowTable(int p_, int k_) : p(p_), k(k_) {
    const auto& ring = CyclotomicRing::get(p);
    const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), k);
    rows.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Row r(static_cast<std::size_t>(k));
      std::uint64_t rest = idx;
      for (int c = k - 1; c >= 0; --c) {
        r[static_cast<std::size_t>(c)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
        rest /= static_cast<std::uint64_t>(p);
      }
      std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
      for (int e : r) ++counts[static_cast<std::size_t>(e)];
      by_sum[ring.reduce(counts)].push_back(static_cast<int>(rows.size()));
      rows.push_back(std::move(r));
    }
  }

  const std::vector<int>* with_sum(const std::vector<std::int64_t>& reduced) const {
    auto it = by_sum.find(reduced);
    return it == by_sum.end() ? nullptr : &it->second;
  }
};

// Row placement order after r_1: r_N, r_2, r_{N-1}, r_3, ... (0-based indices).
struct Slot {
  int row = 0;
  bool bottom = false;
};

std::vector<Slot> placement_order(int n) {
  std::vector<Slot> order;
  int lo = 1;
  int hi = n - 1;
  bool bottom = true;
  while (lo <= hi) {
    if (bottom) {
      order.push_back({hi--, true});
    } else {
      order.push_back({lo++, false});
    }
    bottom = !bottom;
  }
  return order;
}

// Row `row` is non-decreasing on every run of columns that agree on rows
// 0..row-1.
bool sorted_within_prefix_runs(const std::vector<int>& exps, int k, int row, const Row& cand) {
  for (int c = 0; c + 1 < k; ++c) {
    bool same_prefix = true;
    for (int r = 0; r < row && same_prefix; ++r) {
      same_prefix = exps[static_cast<std::size_t>(r * k + c)] == exps[static_cast<std::size_t>(r * k + c + 1)];
    }
    if (same_prefix && cand[static_cast<std::size_t>(c)] > cand[static_cast<std::size_t>(c + 1)]) return false;
  }
  return true;
}

bool exps_is_ccm(const std::vector<int>& exps, int p, int n, int k, const CyclotomicRing& ring) {
  Counts counts{};
  const std::span<const std::int64_t> view(counts.data(), static_cast<std::size_t>(p));
  for (int lag = 1; lag < n; ++lag) {
    counts.fill(0);
    for (int i = 0; i + lag < n; ++i) {
      for (int c = 0; c < k; ++c) {
        ++counts[static_cast<std::size_t>(mod_p(exps[static_cast<std::size_t>(i * k + c)] -
                                                    exps[static_cast<std::size_t>((i + lag) * k + c)],
                                                p))];
      }
    }
    if (!ring.is_zero(view)) return false;
  }
  return true;
}

PhaseMatrix to_matrix(const std::vector<int>& exps, int p, int n, int k) {
  std::vector<Exponent> e(exps.begin(), exps.end());
  return PhaseMatrix(p, n, k, std::move(e));
}

class Searcher {
 public:
  explicit Searcher(const SearchConfig& cfg)
      : cfg_(cfg),
        n_(cfg.n_rows),
        k_(cfg.n_cols),
        p_(cfg.p),
        ring_(CyclotomicRing::get(cfg.p)),
        table_(cfg.p, cfg.n_cols),
        order_(placement_order(cfg.n_rows)) {
    zero_rows_ = table_.with_sum(std::vector<std::int64_t>(static_cast<std::size_t>(ring_.degree()), 0));
  }

  struct Branch {
    int last_row = 0;    // r_N
    int second_row = -1; // r_2, or -1 when N = 2
  };

  std::vector<Branch> branches() const {
    std::vector<Branch> out;
    if (zero_rows_ == nullptr || n_ < 2) return out;
    if (n_ == 2) {
      for (int r : *zero_rows_) out.push_back({r, -1});
      return out;
    }
    std::vector<int> exps(static_cast<std::size_t>(n_ * k_), 0);
    const auto seconds = top_candidates(exps, 1);
    for (int r : *zero_rows_) {
      for (int s : seconds) out.push_back({r, s});
    }
    return out;
  }

  // Runs one branch; returns matrices found and adds visited nodes.
  std::vector<PhaseMatrix> run(const Branch& br, std::atomic<std::uint64_t>& nodes,
                               const std::function<void(std::uint64_t)>& tick) {
    std::vector<PhaseMatrix> found;
    std::vector<int> exps(static_cast<std::size_t>(n_ * k_), 0);
    place(exps, n_ - 1, table_.rows[static_cast<std::size_t>(br.last_row)]);
    if (n_ == 2) {
      found.push_back(to_matrix(exps, p_, n_, k_));
      return found;
    }
    place(exps, 1, table_.rows[static_cast<std::size_t>(br.second_row)]);
    dfs(exps, 2, found, nodes, tick);
    return found;
  }

 private:
  void place(std::vector<int>& exps, int row, const Row& r) const {
    for (int c = 0; c < k_; ++c) exps[static_cast<std::size_t>(row * k_ + c)] = r[static_cast<std::size_t>(c)];
  }

  std::vector<int> top_candidates(const std::vector<int>& exps, int row) const {
    // The middle row of an odd-height matrix is left unordered.
    const bool sort = cfg_.prune_sorted_rows && !(n_ % 2 == 1 && row == n_ / 2 && row > 1);
    std::vector<int> out;
    for (std::size_t idx = 0; idx < table_.rows.size(); ++idx) {
      const Row& r = table_.rows[idx];
      if (row == 1 && r[0] != 0) continue;
      if (sort && !sorted_within_prefix_runs(exps, k_, row, r)) continue;
      out.push_back(static_cast<int>(idx));
    }
    return out;
  }

  // Rows r_b whose placement zeroes the lag-b correlation.
  const std::vector<int>* bottom_candidates(const std::vector<int>& exps, int row) const {
    const int lag = row;
    Counts partial{};
    for (int i = 1; i + lag < n_; ++i) {
      for (int c = 0; c < k_; ++c) {
        ++partial[static_cast<std::size_t>(mod_p(exps[static_cast<std::size_t>(i * k_ + c)] -
                                                     exps[static_cast<std::size_t>((i + lag) * k_ + c)],
                                                 p_))];
      }
    }
    if (4 % p_ == 0) {
      // Taxicab admissibility: a sum of K roots has |a| + |b| ≤ K.
      CycSum s(p_, std::vector<std::int64_t>(partial.begin(), partial.begin() + p_));
      if (taxicab_norm(s) > k_) return nullptr;
    }
    // r_1 · conj(r_b) = conj(sum r_b), so sum r_b must equal -conj(partial).
    std::vector<std::int64_t> target(static_cast<std::size_t>(p_), 0);
    for (int e = 0; e < p_; ++e) {
      target[static_cast<std::size_t>(mod_p(-e, p_))] = -partial[static_cast<std::size_t>(e)];
    }
    return table_.with_sum(ring_.reduce(target));
  }

  bool reversal_ok(const std::vector<int>& exps) const {
    for (int c = 1; c < k_; ++c) {
      const int pe = exps[static_cast<std::size_t>(1 * k_ + c)];
      const int pe_rev = mod_p(exps[static_cast<std::size_t>((n_ - 1) * k_ + c)] -
                                   exps[static_cast<std::size_t>((n_ - 2) * k_ + c)],
                               p_);
      if (pe > pe_rev) return false;
    }
    return true;
  }

  void dfs(std::vector<int>& exps, std::size_t depth, std::vector<PhaseMatrix>& found,
           std::atomic<std::uint64_t>& nodes, const std::function<void(std::uint64_t)>& tick) {
    tick(nodes.fetch_add(1, std::memory_order_relaxed) + 1);
    if (depth == order_.size()) {
      if (exps_is_ccm(exps, p_, n_, k_, ring_)) found.push_back(to_matrix(exps, p_, n_, k_));
      return;
    }
    const Slot slot = order_[depth];
    if (slot.bottom) {
      const auto* cands = bottom_candidates(exps, slot.row);
      if (cands == nullptr) return;
      const bool filter = cfg_.prune_reversal && slot.row == n_ - 2 && n_ >= 4;
      for (int idx : *cands) {
        place(exps, slot.row, table_.rows[static_cast<std::size_t>(idx)]);
        if (filter && !reversal_ok(exps)) continue;
        dfs(exps, depth + 1, found, nodes, tick);
      }
    } else {
      for (int idx : top_candidates(exps, slot.row)) {
        place(exps, slot.row, table_.rows[static_cast<std::size_t>(idx)]);
        dfs(exps, depth + 1, found, nodes, tick);
      }
    }
    place(exps, slot.row, Row(static_cast<std::size_t>(k_), 0));
  }

  const SearchConfig& cfg_;
  int n_;
  int k_;
  int p_;
  const CyclotomicRing& ring_;
  RowTable table_;
  std::vector<Slot> order_;
  const std::vector<int>* zero_rows_ = nullptr;
};

using json = nlohmann::json;

json checkpoint_header(const SearchConfig& cfg) {
  return json{{"p", cfg.p},
              {"N", cfg.n_rows},
              {"K", cfg.n_cols},
              {"prune_reversal", cfg.prune_reversal},
              {"prune_sorted_rows", cfg.prune_sorted_rows}};
}

struct Checkpoint {
  std::map<std::uint64_t, std::vector<PhaseMatrix>> done;
  std::map<std::uint64_t, std::uint64_t> nodes;
};

Checkpoint load_checkpoint(const SearchConfig& cfg) {
  Checkpoint cp;
  std::ifstream in(cfg.checkpoint_path);
  if (!in) return cp;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::parse_error&) {
      break;  // truncated tail from an interrupted write
    }
    if (!header_seen) {
      if (!rec.contains("header") || rec["header"] != checkpoint_header(cfg)) {
        throw std::runtime_error("checkpoint '" + cfg.checkpoint_path +
                                 "' was written for a different search configuration");
      }
      header_seen = true;
      continue;
    }
    if (rec.value("done", false)) {
      const auto branch = rec["branch"].get<std::uint64_t>();
      std::vector<PhaseMatrix> ms;
      for (const auto& s : rec["matrices"]) {
        ms.push_back(std::get<PhaseMatrix>(parse_record(s.get<std::string>())));
      }
      cp.done[branch] = std::move(ms);
      cp.nodes[branch] = rec["nodes"].get<std::uint64_t>();
    }
  }
  return cp;
}

}  // namespace

std::vector<Row> zero_sum_tuples(int p, int n_cols) {
  const auto& ring = CyclotomicRing::get(p);
  std::vector<Row> out;
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), n_cols);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(p));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Row r(static_cast<std::size_t>(n_cols));
    std::uint64_t rest = idx;
    for (int c = n_cols - 1; c >= 0; --c) {
      r[static_cast<std::size_t>(c)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    std::fill(counts.begin(), counts.end(), 0);
    for (int e : r) ++counts[static_cast<std::size_t>(e)];
    if (ring.is_zero(counts)) out.push_back(std::move(r));
  }
  return out;
}

RowCandidateSet increasing_exponent_rows(const Row& base, int p) {
  RowCandidateSet set;
  set.base_row = base;
  const int k = static_cast<int>(base.size());
  const std::uint64_t total = ipow(static_cast<std::uint64_t>(p), k);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Row r(static_cast<std::size_t>(k));
    std::uint64_t rest = idx;
    for (int c = k - 1; c >= 0; --c) {
      r[static_cast<std::size_t>(c)] = static_cast<int>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    bool ok = true;
    for (int c = 0; c + 1 < k && ok; ++c) {
      if (base[static_cast<std::size_t>(c)] == base[static_cast<std::size_t>(c + 1)] &&
          r[static_cast<std::size_t>(c)] > r[static_cast<std::size_t>(c + 1)]) {
        ok = false;
      }
    }
    if (ok) set.candidates.push_back(std::move(r));
  }
  return set;
}

SearchResult search_ccm(const SearchConfig& cfg) {
  if (cfg.p < 2 || cfg.n_rows < 1 || cfg.n_cols < 1) {
    throw std::invalid_argument("search_ccm: need p >= 2, N >= 1, K >= 1");
  }
  const double bits = cfg.n_rows * cfg.n_cols * std::log2(static_cast<double>(cfg.p));
  if (bits > 64.0 && !cfg.guard_override && !guard_override_enabled()) {
    throw GuardExceeded("search_ccm: N*K*log2(p) = " + std::to_string(bits) +
                        " exceeds 64; set CCM_GUARD_OVERRIDE=1 to run anyway");
  }
  if (std::pow(static_cast<double>(cfg.p), cfg.n_cols) > 1e7) {
    throw GuardExceeded("search_ccm: p^K row table too large");
  }

  SearchResult result;
  if (cfg.n_rows == 1) {
    // No off-diagonals: every row qualifies; normalized, that is the all-ones row.
    result.matrices.push_back(PhaseMatrix::ones(cfg.p, 1, cfg.n_cols));
    return result;
  }

  Searcher searcher(cfg);
  const auto branches = searcher.branches();
  result.branches = branches.size();

  Checkpoint cp;
  if (!cfg.checkpoint_path.empty()) cp = load_checkpoint(cfg);

  std::vector<std::vector<PhaseMatrix>> per_branch(branches.size());
  std::vector<char> completed(branches.size(), 0);
  std::atomic<std::uint64_t> nodes{0};
  for (const auto& [b, ms] : cp.done) {
    if (b < branches.size()) {
      per_branch[b] = ms;
      completed[b] = 1;
      nodes += cp.nodes[b];
      ++result.resumed_branches;
    }
  }

  std::mutex io_mu;
  std::ofstream cp_out;
  if (!cfg.checkpoint_path.empty()) {
    const bool fresh = cp.done.empty() && !std::ifstream(cfg.checkpoint_path).good();
    cp_out.open(cfg.checkpoint_path, std::ios::app);
    if (!cp_out) throw std::runtime_error("cannot write checkpoint '" + cfg.checkpoint_path + "'");
    if (fresh) cp_out << json{{"header", checkpoint_header(cfg)}}.dump() << '\n' << std::flush;
  }

  std::atomic<std::uint64_t> found_total{0};
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= branches.size()) return;
      if (completed[b]) continue;
      const std::uint64_t before = nodes.load();
      auto tick = [&](std::uint64_t count) {
        if (cfg.on_progress && cfg.progress_interval > 0 && count % cfg.progress_interval == 0) {
          std::lock_guard lock(io_mu);
          cfg.on_progress({b, count, found_total.load()});
        }
      };
      auto found = searcher.run(branches[b], nodes, tick);
      found_total += found.size();
      if (cp_out.is_open()) {
        json rec{{"branch", b}, {"done", true}, {"nodes", nodes.load() - before}, {"found", found.size()}};
        rec["matrices"] = json::array();
        for (const auto& m : found) rec["matrices"].push_back(format_matrix(m));
        std::lock_guard lock(io_mu);
        cp_out << rec.dump() << '\n' << std::flush;
      }
      per_branch[b] = std::move(found);
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  result.nodes = nodes.load();
  for (auto& ms : per_branch) {
    for (auto& m : ms) result.matrices.push_back(std::move(m));
  }
  std::sort(result.matrices.begin(), result.matrices.end());

  if (!cfg.emit_raw) {
    std::set<PhaseMatrix> classes;
    for (const auto& m : result.matrices) classes.insert(canonical_form(m));
    result.matrices.assign(classes.begin(), classes.end());
  }
  return result;
}

std::vector<TernaryMatrix> search_ternary_ccm(int n_rows, int n_cols) {
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("search_ternary_ccm: bad dimensions");
  if (std::pow(3.0, n_rows * n_cols) > 1e12 && !guard_override_enabled()) {
    throw GuardExceeded("search_ternary_ccm: 3^(N*K) too large");
  }
  const int n = n_rows;
  const int k = n_cols;
  std::vector<std::vector<int>> rows;
  const std::uint64_t total = ipow(3, k);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<int> r(static_cast<std::size_t>(k));
    std::uint64_t rest = idx;
    for (int c = k - 1; c >= 0; --c) {
      r[static_cast<std::size_t>(c)] = static_cast<int>(rest % 3) - 1;
      rest /= 3;
    }
    rows.push_back(std::move(r));
  }

  // r_1, r_N, r_2, r_{N-1}, ...; placing a bottom row fixes one lag.
  std::vector<Slot> order{{0, false}};
  for (auto s : placement_order(n)) order.push_back(s);

  std::vector<int> m(static_cast<std::size_t>(n * k), 0);
  std::vector<TernaryMatrix> out;
  auto lag_sum = [&](int lag) {
    std::int64_t s = 0;
    for (int i = 0; i + lag < n; ++i)
      for (int c = 0; c < k; ++c) s += m[static_cast<std::size_t>(i * k + c)] * m[static_cast<std::size_t>((i + lag) * k + c)];
    return s;
  };
  std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
    if (depth == order.size()) {
      for (int lag = 1; lag < n; ++lag) {
        if (lag_sum(lag) != 0) return;
      }
      std::vector<std::int8_t> e(m.begin(), m.end());
      out.emplace_back(n, k, std::move(e));
      return;
    }
    const Slot slot = order[depth];
    for (const auto& r : rows) {
      for (int c = 0; c < k; ++c) m[static_cast<std::size_t>(slot.row * k + c)] = r[static_cast<std::size_t>(c)];
      if (slot.bottom && lag_sum(slot.row) != 0) continue;
      dfs(depth + 1);
    }
    for (int c = 0; c < k; ++c) m[static_cast<std::size_t>(slot.row * k + c)] = 0;
  };
  dfs(0);
  std::sort(out.begin(), out.end(), [](const TernaryMatrix& a, const TernaryMatrix& b) {
    return format_matrix(a) < format_matrix(b);
  });
  return out;
}

std::vector<PhaseMatrix> brute_force_ccm(int p, int n_rows, int n_cols) {
  if (p < 1 || n_rows < 1 || n_cols < 1) throw std::invalid_argument("brute_force_ccm: bad dimensions");
  const double space = std::pow(static_cast<double>(p), n_rows * n_cols);
  if (space > 1e8 && !guard_override_enabled()) {
    throw GuardExceeded("brute_force_ccm: p^(N*K) exceeds 10^8");
  }
  const auto& ring = CyclotomicRing::get(p);
  const int cells = n_rows * n_cols;
  std::vector<int> exps(static_cast<std::size_t>(cells), 0);
  std::vector<PhaseMatrix> out;
  // Odometer with the last cell fastest: visits matrices in lexicographic order.
  for (;;) {
    if (exps_is_ccm(exps, p, n_rows, n_cols, ring)) out.push_back(to_matrix(exps, p, n_rows, n_cols));
    int pos = cells - 1;
    while (pos >= 0 && ++exps[static_cast<std::size_t>(pos)] == p) {
      exps[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

}  // namespace ccm
