#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "optrot/medium.hpp"

namespace optrot {

inline constexpr const char* kToolVersion = "optrot 1.0.0";

/// CSV writer with a '#'-prefixed metadata header and fixed numeric
/// formatting, so emitted files are byte-identical across runs and thread
/// counts.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::string& title);

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void columns(const std::vector<std::string>& names);

  void field(double v);
  void field(int v);
  void field(const std::string& v);
  void field(cdouble v);
  void end_row();

  static std::string num(double v);

private:
  std::ofstream out_;
  bool row_open_ = false;
};

} // namespace optrot
