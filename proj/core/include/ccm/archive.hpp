#pragma once

// Line-oriented matrix archive.
//
//   p N K row_1 ... row_N     p-phase matrix, each row K base-p digits
//   t N K row_1 ... row_N     ternary matrix, rows over '+', '-', '0'
//   # ...                     comment
//
// Digits above 9 use lowercase letters (base 36).

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ccm/phase_matrix.hpp"

namespace ccm {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

using ArchiveEntry = std::variant<PhaseMatrix, TernaryMatrix>;

struct ArchiveRecord {
  int line = 0;
  ArchiveEntry matrix;
};

std::string format_matrix(const PhaseMatrix& m);
std::string format_matrix(const TernaryMatrix& t);

/// Parses one non-comment record; `line` is used for error messages.
ArchiveEntry parse_record(std::string_view text, int line = 0);

std::vector<ArchiveRecord> read_archive(std::istream& in);
std::vector<ArchiveRecord> read_archive_file(const std::string& path);

/// Convenience: all records must be p-phase matrices.
std::vector<PhaseMatrix> read_phase_archive(std::istream& in);
std::vector<PhaseMatrix> read_phase_archive_file(const std::string& path);

/// Writes one line per matrix, in the given order.
void write_archive(std::ostream& out, const std::vector<PhaseMatrix>& matrices);
void write_archive(std::ostream& out, const std::vector<TernaryMatrix>& matrices);

}  // namespace ccm
