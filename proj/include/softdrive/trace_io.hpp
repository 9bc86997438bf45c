#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "softdrive/simulation.hpp"
#include "softdrive/text.hpp"

namespace softdrive {

/// Column order of trace files. Units: s, ref in the controlled quantity
/// (Pa or mm), Pa, m^3, mm, 0/1, 0/1, armature 0..1, mm, Pa.
inline constexpr const char* kTraceHeader =
    "t,ref,p_tube,v_tube,tip_y,hp_cmd,lp_cmd,hp_arm,lp_arm,sensed_pos,sensed_p";

inline void write_trace_csv(std::ostream& out, const SimTrace& trace)
{
  using text::format_double;
  out << kTraceHeader << '\n';
  for (const auto& r : trace) {
    out << format_double(r.t) << ',' << format_double(r.ref) << ',' << format_double(r.p_tube) << ','
        << format_double(r.v_tube) << ',' << format_double(r.tip_y) << ',' << (r.hp_cmd ? '1' : '0') << ','
        << (r.lp_cmd ? '1' : '0') << ',' << format_double(r.hp_arm) << ',' << format_double(r.lp_arm) << ','
        << format_double(r.sensed_pos) << ',' << format_double(r.sensed_p) << '\n';
  }
}

inline SimTrace read_trace_csv(std::istream& in)
{
  std::string line;
  if (!std::getline(in, line) || text::trim(line) != kTraceHeader) {
    throw std::runtime_error("trace csv: missing or unexpected header");
  }
  SimTrace trace;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto cells = text::split(line, ',');
    if (cells.size() != 11) {
      throw std::runtime_error("trace csv line " + std::to_string(line_no) + ": expected 11 columns");
    }
    auto num = [&](std::size_t i) {
      const auto v = text::parse_double(cells[i]);
      if (!v) throw std::runtime_error("trace csv line " + std::to_string(line_no) + ": bad number");
      return *v;
    };
    auto flag = [&](std::size_t i) {
      if (cells[i] == "1") return true;
      if (cells[i] == "0") return false;
      throw std::runtime_error("trace csv line " + std::to_string(line_no) + ": bad flag");
    };
    trace.push_back(SimRecord{num(0), num(1), num(2), num(3), num(4), flag(5), flag(6), num(7), num(8), num(9),
                              num(10)});
  }
  return trace;
}

}  // namespace softdrive
