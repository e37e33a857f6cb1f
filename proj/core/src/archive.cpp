#include "ccm/archive.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "ccm/cyclotomic.hpp"

namespace ccm {

namespace {

char digit_char(int d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

std::vector<std::string_view> split_fields(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != '\r') ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

int parse_int(std::string_view s, int line, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::string format_matrix(const PhaseMatrix& m) {
  std::string out = std::to_string(m.modulus()) + ' ' + std::to_string(m.rows()) + ' ' +
                    std::to_string(m.cols());
  for (int n = 0; n < m.rows(); ++n) {
    out += ' ';
    for (auto e : m.row(n)) out += digit_char(e);
  }
  return out;
}

std::string format_matrix(const TernaryMatrix& t) {
  std::string out = "t " + std::to_string(t.rows()) + ' ' + std::to_string(t.cols());
  for (int n = 0; n < t.rows(); ++n) {
    out += ' ';
    for (int k = 0; k < t.cols(); ++k) {
      const int v = t.at(n, k);
      out += v > 0 ? '+' : (v < 0 ? '-' : '0');
    }
  }
  return out;
}

ArchiveEntry parse_record(std::string_view text, int line) {
  const auto fields = split_fields(text);
  if (fields.size() < 3) throw ParseError(line, "expected 'p N K rows...'");
  const bool ternary = fields[0] == "t";
  const int n_rows = parse_int(fields[1], line, "row count");
  const int n_cols = parse_int(fields[2], line, "column count");
  if (n_rows < 1 || n_cols < 1) throw ParseError(line, "dimensions must be positive");
  if (fields.size() != 3 + static_cast<std::size_t>(n_rows)) {
    throw ParseError(line, "expected " + std::to_string(n_rows) + " rows, found " +
                               std::to_string(fields.size() - 3));
  }
  for (int n = 0; n < n_rows; ++n) {
    if (fields[3 + static_cast<std::size_t>(n)].size() != static_cast<std::size_t>(n_cols)) {
      throw ParseError(line, "row " + std::to_string(n + 1) + " does not have " +
                                 std::to_string(n_cols) + " entries");
    }
  }

  if (ternary) {
    std::vector<std::int8_t> entries;
    for (int n = 0; n < n_rows; ++n) {
      for (char c : fields[3 + static_cast<std::size_t>(n)]) {
        switch (c) {
          case '+': entries.push_back(1); break;
          case '-': entries.push_back(-1); break;
          case '0': entries.push_back(0); break;
          default: throw ParseError(line, std::string("invalid ternary symbol '") + c + "'");
        }
      }
    }
    return TernaryMatrix(n_rows, n_cols, std::move(entries));
  }

  const int p = parse_int(fields[0], line, "modulus");
  if (p < 1 || p > kMaxModulus) throw ParseError(line, "modulus out of range");
  std::vector<Exponent> exps;
  for (int n = 0; n < n_rows; ++n) {
    for (char c : fields[3 + static_cast<std::size_t>(n)]) {
      const int d = digit_value(c);
      if (d < 0 || d >= p) {
        throw ParseError(line, std::string("digit '") + c + "' invalid for modulus " +
                                   std::to_string(p));
      }
      exps.push_back(static_cast<Exponent>(d));
    }
  }
  return PhaseMatrix(p, n_rows, n_cols, std::move(exps));
}

std::vector<ArchiveRecord> read_archive(std::istream& in) {
  std::vector<ArchiveRecord> out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto fields = split_fields(text);
    if (fields.empty() || fields.front().front() == '#') continue;
    out.push_back({line, parse_record(text, line)});
  }
  return out;
}

std::vector<ArchiveRecord> read_archive_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open archive '" + path + "'");
  return read_archive(in);
}

std::vector<PhaseMatrix> read_phase_archive(std::istream& in) {
  std::vector<PhaseMatrix> out;
  for (auto& rec : read_archive(in)) {
    if (!std::holds_alternative<PhaseMatrix>(rec.matrix)) {
      throw ParseError(rec.line, "expected a p-phase matrix");
    }
    out.push_back(std::get<PhaseMatrix>(std::move(rec.matrix)));
  }
  return out;
}

std::vector<PhaseMatrix> read_phase_archive_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open archive '" + path + "'");
  return read_phase_archive(in);
}

void write_archive(std::ostream& out, const std::vector<PhaseMatrix>& matrices) {
  for (const auto& m : matrices) out << format_matrix(m) << '\n';
}

void write_archive(std::ostream& out, const std::vector<TernaryMatrix>& matrices) {
  for (const auto& t : matrices) out << format_matrix(t) << '\n';
}

}  // namespace ccm
