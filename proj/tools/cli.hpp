#pragma once

// Subcommands of the `ccm` tool. Each returns the process exit code:
// 0 success, 1 domain failure, 2 usage or parse error.

#include <functional>
#include <iosfwd>
#include <string>

#include "ccm/search.hpp"

namespace ccm::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainFailure = 1;
inline constexpr int kUsageError = 2;

/// Runs `body`, reporting exceptions on `err` and mapping them to exit codes.
int guarded(const std::function<int()>& body, std::ostream& err);

int cmd_verify(const std::string& archive_path, std::ostream& out);

/// Composite autocorrelation of the `index`-th matrix of the archive as CSV
/// `lag,real,imag`. `record` (an archive line) is used instead when non-empty.
int cmd_acf(const std::string& archive_path, const std::string& record, int index, const std::string& csv_path,
            std::ostream& out);

struct SearchOptions {
  SearchConfig config;
  bool ternary = false;
  bool brute = false;
  bool progress = false;  // JSON progress lines on the error stream
  std::string out_path;   // archive; empty writes to `out`
  std::string summary_path;
};
int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err);

struct ClassifyOptions {
  std::string archive_path;
  std::string csv_path;      // empty writes to `out`
  std::string witness_path;  // optional
  std::string summary_path;  // optional
  int jobs = 1;
};
int cmd_classify(const ClassifyOptions& opt, std::ostream& out);

/// kind is kron, concat or dual; inputs are the first record of each file.
int cmd_construct(const std::string& kind, const std::string& a_path, const std::string& b_path,
                  const std::string& out_path, std::ostream& out);

/// Canonical form and orbit size of every matrix in the archive.
int cmd_canonical(const std::string& archive_path, std::ostream& out);

}  // namespace ccm::cli
