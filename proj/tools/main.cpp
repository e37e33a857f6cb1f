#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace ccm::cli;

  CLI::App app{"Search, verify, classify and construct complementary code matrices"};
  app.require_subcommand(1);

  std::string archive;
  auto* verify = app.add_subcommand("verify", "check every matrix in an archive");
  verify->add_option("archive", archive, "matrix archive")->required();

  std::string record;
  std::string csv;
  int index = 0;
  auto* acf = app.add_subcommand("acf", "composite autocorrelation as CSV lag,real,imag");
  acf->add_option("archive", archive, "matrix archive");
  acf->add_option("-m,--matrix", record, "inline archive record instead of a file");
  acf->add_option("-i,--index", index, "which matrix of the archive (0-based)");
  acf->add_option("-o,--out", csv, "CSV file (default stdout)");

  SearchOptions sopt;
  auto& cfg = sopt.config;
  bool no_prune_reversal = false;
  bool no_prune_sorted = false;
  bool classes_only = false;
  auto* search = app.add_subcommand("search", "exhaustive search for N x K CCMs");
  search->add_option("p", cfg.p, "number of phases (ignored with --ternary)")->required();
  search->add_option("N", cfg.n_rows, "rows (code length)")->required();
  search->add_option("K", cfg.n_cols, "columns (number of codes)")->required();
  auto* ternary_flag = search->add_flag("--ternary", sopt.ternary, "search ternary CCMs over {-1, 0, +1}");
  search->add_flag("--brute", sopt.brute, "full enumeration without symmetry pruning")->excludes(ternary_flag);
  search->add_option("-j,--jobs", cfg.jobs, "worker threads");
  search->add_option("--checkpoint", cfg.checkpoint_path, "JSON-lines checkpoint for resuming");
  search->add_flag("--no-prune-reversal", no_prune_reversal, "disable the conjugate-reversal filter");
  search->add_flag("--no-prune-sorted", no_prune_sorted, "disable increasing-exponent row ordering");
  search->add_flag("--classes", classes_only, "emit one canonical matrix per equivalence class");
  search->add_flag("--progress", sopt.progress, "JSON progress records on stderr");
  search->add_option("-o,--out", sopt.out_path, "archive file (default stdout)");
  search->add_option("--summary", sopt.summary_path, "summary JSON file");

  ClassifyOptions copt;
  auto* classify = app.add_subcommand("classify", "equivalence classes and their provenance flags");
  classify->add_option("archive", copt.archive_path, "matrix archive")->required();
  classify->add_option("-o,--out", copt.csv_path, "census CSV (default stdout)");
  classify->add_option("-w,--witness", copt.witness_path, "witness archive");
  classify->add_option("--summary", copt.summary_path, "summary JSON file");
  classify->add_option("-j,--jobs", copt.jobs, "worker threads");

  std::string kind;
  std::string a_path;
  std::string b_path;
  std::string out_path;
  auto* construct = app.add_subcommand("construct", "build a CCM from two smaller matrices");
  construct->add_option("kind", kind, "kron, concat or dual")->required()->check(CLI::IsMember({"kron", "concat", "dual"}));
  construct->add_option("a", a_path, "first operand archive")->required();
  construct->add_option("b", b_path, "second operand archive")->required();
  construct->add_option("-o,--out", out_path, "output archive (default stdout)");

  auto* canonical = app.add_subcommand("canonical", "canonical form and orbit size");
  canonical->add_option("archive", archive, "matrix archive")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  cfg.prune_reversal = !no_prune_reversal;
  cfg.prune_sorted_rows = !no_prune_sorted;
  cfg.emit_raw = !classes_only;

  return guarded(
      [&]() {
        if (*verify) return cmd_verify(archive, std::cout);
        if (*acf) {
          if (archive.empty() && record.empty()) throw std::invalid_argument("acf needs an archive or --matrix");
          return cmd_acf(archive, record, index, csv, std::cout);
        }
        if (*search) return cmd_search(sopt, std::cout, std::cerr);
        if (*classify) return cmd_classify(copt, std::cout);
        if (*construct) return cmd_construct(kind, a_path, b_path, out_path, std::cout);
        return cmd_canonical(archive, std::cout);
      },
      std::cerr);
}
