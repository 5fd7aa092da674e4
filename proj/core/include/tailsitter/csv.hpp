#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tailsitter/simulate.hpp"

namespace tailsitter {

/// RFC 4180 field quoting: wraps in quotes when the field holds a comma, quote or line break.
std::string csv_field(const std::string& s);
/// Locale-independent shortest round-trip formatting.
std::string csv_number(double x);

std::vector<std::string> log_columns();
void write_log_csv(std::ostream& os, const std::vector<LogRecord>& log);
void write_jumps_csv(std::ostream& os, const std::vector<JumpRecord>& jumps);

}  // namespace tailsitter
