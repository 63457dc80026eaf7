#pragma once

#include "kh/homology.hpp"
#include "kh/scan.hpp"

#include <string>

namespace kh {

struct RunReport {
  std::string input_desc;
  std::string method;
  std::string coeff;
  HomologyTable table;
  double wall_ms = 0;
  size_t peak_rank = 0;
  long max_coeff_bits = 0;
  long bound_violations = 0;
};

std::string report_to_json(const RunReport& r);

}  // namespace kh
