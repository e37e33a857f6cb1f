#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ccm/archive.hpp"
#include "ccm/classify.hpp"
#include "ccm/construct.hpp"
#include "ccm/correlation.hpp"
#include "ccm/errors.hpp"
#include "ccm/symmetry.hpp"

namespace ccm::cli {

namespace {

using json = nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  return f;
}

void write_json(const std::string& path, const json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

std::string format_real(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  std::ostringstream s;
  s << std::setprecision(15) << x;
  return s.str();
}

std::vector<ArchiveRecord> read_input(const std::string& path) {
  if (!std::ifstream(path)) throw std::invalid_argument("cannot read '" + path + "'");
  return read_archive_file(path);
}

std::vector<PhaseMatrix> read_phase_input(const std::string& path) {
  std::vector<PhaseMatrix> out;
  for (auto& rec : read_input(path)) {
    if (!std::holds_alternative<PhaseMatrix>(rec.matrix)) throw ParseError(rec.line, "expected a p-phase matrix");
    out.push_back(std::get<PhaseMatrix>(std::move(rec.matrix)));
  }
  return out;
}

template <class T>
T first_record(const std::string& path) {
  auto recs = read_input(path);
  if (recs.empty()) throw std::invalid_argument("archive '" + path + "' is empty");
  if (!std::holds_alternative<T>(recs.front().matrix)) {
    throw ParseError(recs.front().line, std::string("expected a ") +
                                            (std::is_same_v<T, PhaseMatrix> ? "p-phase" : "ternary") + " matrix");
  }
  return std::get<T>(recs.front().matrix);
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ConditionViolated& e) {
    err << "condition violated: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const GuardExceeded& e) {
    err << "refused: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainFailure;
  }
}

int cmd_verify(const std::string& archive_path, std::ostream& out) {
  const auto recs = read_input(archive_path);
  std::size_t passed = 0;
  for (const auto& rec : recs) {
    bool ok = false;
    std::string extra;
    if (const auto* m = std::get_if<PhaseMatrix>(&rec.matrix)) {
      ok = is_ccm(*m);
      extra = is_normalized(*m) ? " normalized" : "";
    } else {
      ok = ternary_is_ccm(std::get<TernaryMatrix>(rec.matrix));
    }
    passed += ok;
    out << "line " << rec.line << ": " << (ok ? "CCM" : "not a CCM") << extra << '\n';
  }
  out << passed << "/" << recs.size() << " CCM\n";
  return passed == recs.size() ? kOk : kDomainFailure;
}

int cmd_acf(const std::string& archive_path, const std::string& record, int index, const std::string& csv_path,
            std::ostream& out) {
  PhaseMatrix m;
  if (!record.empty()) {
    auto entry = parse_record(record, 1);
    if (!std::holds_alternative<PhaseMatrix>(entry)) throw ParseError(1, "expected a p-phase matrix");
    m = std::get<PhaseMatrix>(entry);
  } else {
    const auto all = read_phase_input(archive_path);
    if (index < 0 || static_cast<std::size_t>(index) >= all.size()) {
      throw std::invalid_argument("matrix index " + std::to_string(index) + " out of range");
    }
    m = all[static_cast<std::size_t>(index)];
  }
  std::ofstream file;
  if (!csv_path.empty()) file = open_out(csv_path);
  std::ostream& csv = csv_path.empty() ? out : file;
  const auto prof = composite_profile(m);
  csv << "lag,real,imag\n";
  for (int lag = -prof.max_lag; lag <= prof.max_lag; ++lag) {
    const CycSum& v = prof.at(lag);
    csv << lag << ',';
    if (auto g = v.gaussian()) {
      csv << g->first << ',' << g->second << '\n';
    } else {
      const auto z = v.to_complex();
      csv << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
    }
  }
  return kOk;
}

int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
  const auto& cfg = opt.config;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream archive;
  json summary{{"p", cfg.p}, {"N", cfg.n_rows}, {"K", cfg.n_cols}};
  if (opt.ternary) {
    const auto found = search_ternary_ccm(cfg.n_rows, cfg.n_cols);
    write_archive(archive, found);
    summary["mode"] = "ternary";
    summary["p"] = nullptr;
    summary["raw_count"] = found.size();
  } else if (opt.brute) {
    const auto found = brute_force_ccm(cfg.p, cfg.n_rows, cfg.n_cols);
    write_archive(archive, found);
    summary["mode"] = "brute";
    summary["raw_count"] = found.size();
  } else {
    SearchConfig run = cfg;
    if (opt.progress) {
      run.on_progress = [&err](const ProgressRecord& r) {
        err << json{{"branch", r.branch}, {"nodes", r.nodes}, {"found", r.found}}.dump() << '\n';
      };
    }
    const auto result = search_ccm(run);
    write_archive(archive, result.matrices);
    summary["mode"] = cfg.emit_raw ? "pruned" : "classes";
    summary["raw_count"] = result.matrices.size();
    summary["nodes"] = result.nodes;
    summary["branches"] = result.branches;
    summary["resumed_branches"] = result.resumed_branches;
    summary["prune_reversal"] = cfg.prune_reversal;
    summary["prune_sorted_rows"] = cfg.prune_sorted_rows;
    summary["jobs"] = cfg.jobs;
  }
  summary["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (opt.out_path.empty()) {
    out << archive.str();
  } else {
    auto f = open_out(opt.out_path);
    f << archive.str();
    out << summary["raw_count"].get<std::size_t>() << " matrices written to " << opt.out_path << '\n';
  }
  if (!opt.summary_path.empty()) write_json(opt.summary_path, summary);
  return kOk;
}

int cmd_classify(const ClassifyOptions& opt, std::ostream& out) {
  const auto matrices = read_phase_input(opt.archive_path);
  std::vector<ClassRecord> records;
  if (!matrices.empty()) {
    const auto& m = matrices.front();
    const FactorPool pool = build_factor_pool(m.modulus(), m.rows(), m.cols());
    records = classify_census(matrices, pool, opt.jobs);
  }

  std::ofstream file;
  if (!opt.csv_path.empty()) file = open_out(opt.csv_path);
  std::ostream& csv = opt.csv_path.empty() ? out : file;
  csv << "canonical,orbit_size,hadamard,dual_pair,kronecker,concatenation\n";
  for (const auto& r : records) {
    csv << format_matrix(r.canonical) << ',' << r.orbit_size << ',' << r.has_hadamard << ',' << r.has_dual_pair
        << ',' << r.has_kronecker << ',' << r.has_concatenation << '\n';
  }

  if (!opt.witness_path.empty()) {
    auto w = open_out(opt.witness_path);
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      w << "# class " << i + 1 << " canonical\n" << format_matrix(r.canonical) << '\n';
      if (r.hadamard_witness) w << "# class " << i + 1 << " hadamard\n" << format_matrix(*r.hadamard_witness) << '\n';
      if (r.dual_pair_witness) {
        const auto [a, b] = dual_pair_split(*r.dual_pair_witness);
        w << "# class " << i + 1 << " dual_pair: Z, A, B\n"
          << format_matrix(*r.dual_pair_witness) << '\n'
          << format_matrix(a) << '\n'
          << format_matrix(b) << '\n';
      }
      if (r.concatenation_witness) {
        const auto& c = *r.concatenation_witness;
        w << "# class " << i + 1 << " concatenation " << c.left.cols() << "+" << c.right.cols()
          << ": member, left, right\n"
          << format_matrix(c.member) << '\n'
          << format_matrix(c.left) << '\n'
          << format_matrix(c.right) << '\n';
      }
      const auto& kw = r.kronecker_witness ? r.kronecker_witness : r.kronecker_inclusive_witness;
      if (kw) {
        w << "# class " << i + 1 << (r.has_kronecker ? " kronecker" : " kronecker (single-row factor)")
          << ": member, left, right\n"
          << format_matrix(kw->member) << '\n'
          << format_matrix(kw->left) << '\n'
          << format_matrix(kw->right) << '\n';
      }
    }
  }

  const auto s = summarize(records);
  if (!opt.summary_path.empty()) {
    write_json(opt.summary_path, json{{"input_matrices", matrices.size()},
                                      {"classes", s.classes},
                                      {"hadamard", s.hadamard},
                                      {"dual_pair", s.dual_pair},
                                      {"kronecker", s.kronecker},
                                      {"kronecker_inclusive", s.kronecker_inclusive},
                                      {"concatenation", s.concatenation}});
  }
  if (!opt.csv_path.empty()) {
    out << s.classes << " classes, " << s.hadamard << " hadamard, " << s.dual_pair << " dual pair, " << s.kronecker
        << " kronecker (" << s.kronecker_inclusive << " with single-row factors), " << s.concatenation
        << " concatenation\n";
  }
  return kOk;
}

int cmd_construct(const std::string& kind, const std::string& a_path, const std::string& b_path,
                  const std::string& out_path, std::ostream& out) {
  PhaseMatrix result;
  if (kind == "kron") {
    result = kronecker(first_record<PhaseMatrix>(a_path), first_record<PhaseMatrix>(b_path));
  } else if (kind == "concat") {
    result = concatenate(first_record<PhaseMatrix>(a_path), first_record<PhaseMatrix>(b_path));
  } else if (kind == "dual") {
    result = dual_pair_combine(first_record<TernaryMatrix>(a_path), first_record<TernaryMatrix>(b_path));
  } else {
    throw std::invalid_argument("unknown construction '" + kind + "' (expected kron, concat or dual)");
  }
  if (out_path.empty()) {
    out << format_matrix(result) << '\n';
  } else {
    auto f = open_out(out_path);
    f << format_matrix(result) << '\n';
  }
  return is_ccm(result) ? kOk : kDomainFailure;
}

int cmd_canonical(const std::string& archive_path, std::ostream& out) {
  for (const auto& m : read_phase_input(archive_path)) {
    out << format_matrix(canonical_form(m)) << ' ' << orbit_size(m) << '\n';
  }
  return kOk;
}

}  // namespace ccm::cli
