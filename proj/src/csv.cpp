#include "growwalk/csv.hpp"

#include <cmath>
#include <cstdio>

#include "growwalk/errors.hpp"

namespace growwalk {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out, std::string_view config,
                     const std::vector<std::string>& columns)
    : out_(out), columns_(columns.size()) {
  if (columns.empty()) throw ConfigError("csv: at least one column required");
  std::string line(config);
  for (char& ch : line) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  out_ << "# config " << line << '\n';
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j) out_ << ',';
    out_ << quote_field(columns[j]);
  }
  out_ << '\n';
}

void CsvWriter::separator() {
  if (filled_ == columns_) throw ConfigError("csv: too many cells in row");
  if (filled_++) out_ << ',';
}

CsvWriter& CsvWriter::cell(double value) {
  separator();
  out_ << format_double(value);
  return *this;
}

CsvWriter& CsvWriter::integer(std::int64_t value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::unsigned_integer(std::uint64_t value) {
  separator();
  out_ << value;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view value) {
  separator();
  out_ << quote_field(value);
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw ConfigError("csv: row has too few cells");
  out_ << '\n';
  filled_ = 0;
}

}  // namespace growwalk
