#include "tailsitter/csv.hpp"

#include <charconv>
#include <cmath>

namespace tailsitter {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::vector<std::string> log_columns() {
  return {"t",  "j",  "mode", "p_x",     "p_y",    "p_z",    "v_x",    "v_y",     "v_z",
          "q_w", "q_x", "q_y",  "q_z",     "omega_x", "omega_y", "omega_z", "u1",    "u2",
          "u3", "u4", "omega1", "omega2", "delta1",  "delta2", "V",      "kappa", "clipped"};
}

void write_log_csv(std::ostream& os, const std::vector<LogRecord>& log) {
  const auto cols = log_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(cols[i]);
  os << "\r\n";
  for (const auto& r : log) {
    std::string line = csv_number(r.t) + "," + std::to_string(r.j) + "," + csv_field(mode_name(r.mode));
    auto add = [&line](double x) { line += "," + csv_number(x); };
    for (int i = 0; i < 3; ++i) add(r.p(i));
    for (int i = 0; i < 3; ++i) add(r.v(i));
    for (int i = 0; i < 4; ++i) add(r.q.vec()(i));
    for (int i = 0; i < 3; ++i) add(r.omega(i));
    for (int i = 0; i < 4; ++i) add(r.u.vec()(i));
    add(r.physical.omega1);
    add(r.physical.omega2);
    add(r.physical.delta1);
    add(r.physical.delta2);
    add(r.V);
    add(r.kappa);
    line += r.clipped ? ",1" : ",0";
    os << line << "\r\n";
  }
}

void write_jumps_csv(std::ostream& os, const std::vector<JumpRecord>& jumps) {
  os << "t,j,from_mode,to_mode,V\r\n";
  for (const auto& jr : jumps)
    os << csv_number(jr.t) << ',' << jr.j << ',' << csv_field(mode_name(jr.from)) << ','
       << csv_field(mode_name(jr.to)) << ',' << csv_number(jr.V) << "\r\n";
}

}  // namespace tailsitter
