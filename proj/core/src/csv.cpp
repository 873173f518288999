#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/core.h>

#include "irc/errors.hpp"
#include "irc/scenario.hpp"

namespace irc::scenario {
namespace {

std::string field(double v) { return std::isnan(v) ? std::string() : fmt::format("{:.12g}", v); }

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& text, std::size_t line_no) {
  if (text.empty()) return std::nan("");
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("csv", fmt::format("line {}: '{}' is not a number", line_no, text));
  }
}

}  // namespace

void write_map_csv(std::ostream& out, const DominanceMap& map) {
  out << kMapCsvHeader << '\n';
  for (const MapCell& c : map.cells) {
    out << fmt::format("{:.12g},{:.12g},{},{},{},{},{},{}\n", c.xr, c.yr, field(c.sum[0]), field(c.sum[1]),
                       field(c.sum[2]), field(c.sum[3]), to_string(c.winner), ef::to_string(c.bl_scenario));
  }
}

DominanceMap read_map_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMapCsvHeader) {
    throw ConfigError("csv", "map CSV must start with the header line");
  }
  DominanceMap map;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line);
    if (f.size() != 8) throw ConfigError("csv", fmt::format("line {}: expected 8 fields, got {}", line_no, f.size()));
    MapCell c;
    c.xr = parse_double(f[0], line_no);
    c.yr = parse_double(f[1], line_no);
    for (std::size_t k = 0; k < 4; ++k) c.sum[k] = parse_double(f[2 + k], line_no);
    try {
      c.winner = parse_protocol(f[6]);
      c.bl_scenario = ef::parse_bi_scenario(f[7]);
    } catch (const DomainError& e) {
      throw ConfigError("csv", fmt::format("line {}: {}", line_no, e.what()));
    }
    map.cells.push_back(c);
  }
  if (!map.cells.empty()) {
    const double y0 = map.cells.front().yr;
    while (map.nx < map.cells.size() && map.cells[map.nx].yr == y0) ++map.nx;
    map.ny = map.cells.size() / map.nx;
    if (map.nx * map.ny != map.cells.size()) throw ConfigError("csv", "map CSV is not a rectangular grid");
  }
  return map;
}

void write_slice_csv(std::ostream& out, const std::vector<SliceRow>& rows) {
  out << "xr,af,df,ef_bl,ef_sl,af_gain,bl_scenario\n";
  for (const SliceRow& r : rows) {
    out << fmt::format("{:.12g},{},{},{},{},{:.12g},{}\n", r.xr, field(r.sum[0]), field(r.sum[1]), field(r.sum[2]),
                       field(r.sum[3]), r.af_gain, ef::to_string(r.bl_scenario));
  }
}

void write_slmap_csv(std::ostream& out, const SlBlMap& map) {
  out << "xr,yr,ef_sl,ef_bl,winner,bl_scenario,frontier\n";
  for (const SlBlCell& c : map.cells) {
    out << fmt::format("{:.12g},{:.12g},{:.12g},{:.12g},{},{},{}\n", c.xr, c.yr, c.sl_sum, c.bl_sum,
                       to_string(c.winner), ef::to_string(c.bl_scenario), c.frontier ? 1 : 0);
  }
}

}  // namespace irc::scenario
