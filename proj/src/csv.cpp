#include "optrot/csv.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace optrot {

CsvWriter::CsvWriter(const std::string& path, const std::string& title)
    : out_(path) {
  if (!out_) throw std::runtime_error("cannot open output file " + path);
  out_ << "# " << title << "\n";
  out_ << "# tool = " << kToolVersion << "\n";
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  out_ << "# " << key << " = " << value << "\n";
}

void CsvWriter::meta(const std::string& key, double value) {
  meta(key, num(value));
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    out_ << (i ? "," : "") << names[i];
  out_ << "\n";
}

std::string CsvWriter::num(double v) {
  char buf[40];
  if (std::isnan(v)) return "nan";
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

void CsvWriter::field(double v) {
  if (row_open_) out_ << ",";
  out_ << num(v);
  row_open_ = true;
}

void CsvWriter::field(int v) {
  if (row_open_) out_ << ",";
  out_ << v;
  row_open_ = true;
}

void CsvWriter::field(const std::string& v) {
  if (row_open_) out_ << ",";
  out_ << v;
  row_open_ = true;
}

void CsvWriter::field(cdouble v) {
  if (row_open_) out_ << ",";
  out_ << num(v.real()) << (v.imag() >= 0.0 || std::isnan(v.imag()) ? "+" : "")
       << num(v.imag()) << "i";
  row_open_ = true;
}

void CsvWriter::end_row() {
  out_ << "\n";
  row_open_ = false;
}

} // namespace optrot
