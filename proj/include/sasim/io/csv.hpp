#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sasim/common.hpp"
#include "sasim/sim/simulate.hpp"

namespace sasim {

/// Shortest representation that round-trips a double exactly.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    require(pos == s.size() || s.substr(pos).find_first_not_of(" \t\r") ==
                                   std::string::npos,
            "config-error", where + ": trailing characters in number '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("config-error", where + ": cannot parse number '" + s + "'");
  }
}

/// Column layout: time, states..., per-corner command, damper force, road,
/// deflection rate, then the body acceleration.
template <typename Scalar>
void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectoryT<Scalar>& traj,
                          const std::vector<std::string>& state_names) {
  std::ofstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  const Index nc = traj.corners();
  f << "time";
  for (const auto& n : state_names) f << ',' << n;
  for (Index i = 0; i < nc; ++i) f << ",c_in_" << i;
  for (Index i = 0; i < nc; ++i) f << ",f_damper_" << i;
  for (Index i = 0; i < nc; ++i) f << ",x_road_" << i;
  for (Index i = 0; i < nc; ++i) f << ",v_def_" << i;
  f << ",accel\n";
  for (Index k = 0; k < traj.samples(); ++k) {
    f << format_double(traj.time(k));
    for (Index j = 0; j < traj.states.cols(); ++j)
      f << ',' << format_double(traj.states(k, j));
    for (Index i = 0; i < nc; ++i) f << ',' << format_double(traj.commands(k, i));
    for (Index i = 0; i < nc; ++i) f << ',' << format_double(traj.forces(k, i));
    for (Index i = 0; i < nc; ++i) f << ',' << format_double(traj.roads(k, i));
    for (Index i = 0; i < nc; ++i) f << ',' << format_double(traj.defrates(k, i));
    f << ',' << format_double(traj.accel(k)) << '\n';
  }
  require(f.good(), "io-error", "write failed for " + path.string());
}

struct SummaryRow {
  std::string scenario;
  std::string controller;
  double rms_accel = 0;
  double absorbed_power_final = 0;
  long switch_count = 0;
};

inline void write_summary_csv(const std::filesystem::path& path,
                              const std::vector<SummaryRow>& rows) {
  std::ofstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  f << "scenario,controller,rms_accel,absorbed_power_final,switch_count\n";
  for (const auto& r : rows)
    f << r.scenario << ',' << r.controller << ',' << format_double(r.rms_accel)
      << ',' << format_double(r.absorbed_power_final) << ',' << r.switch_count
      << '\n';
  require(f.good(), "io-error", "write failed for " + path.string());
}

inline std::vector<SummaryRow> read_summary_csv(
    const std::filesystem::path& path) {
  std::ifstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  std::string line;
  require(static_cast<bool>(std::getline(f, line)), "io-error",
          path.string() + ": empty file");
  std::vector<SummaryRow> rows;
  int lineno = 1;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto cells = split_csv_line(line);
    require(cells.size() == 5, "io-error",
            path.string() + ":" + std::to_string(lineno) +
                ": expected 5 columns");
    const std::string where = path.string() + ":" + std::to_string(lineno);
    SummaryRow r;
    r.scenario = cells[0];
    r.controller = cells[1];
    r.rms_accel = parse_double(cells[2], where);
    r.absorbed_power_final = parse_double(cells[3], where);
    r.switch_count = static_cast<long>(parse_double(cells[4], where));
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Two-column (time_s, elevation_m) profile table, one header line allowed.
inline void read_table_csv(const std::filesystem::path& path,
                           std::vector<double>& t, std::vector<double>& e) {
  std::ifstream f(path);
  require(f.good(), "io-error", "cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    const auto cells = split_csv_line(line);
    require(cells.size() >= 2, "io-error",
            path.string() + ":" + std::to_string(lineno) +
                ": expected two columns");
    if (lineno == 1 && cells[0].find_first_of("0123456789.-+") != 0)
      continue;  // header
    const std::string where = path.string() + ":" + std::to_string(lineno);
    t.push_back(parse_double(cells[0], where));
    e.push_back(parse_double(cells[1], where));
  }
  require(!t.empty(), "io-error", path.string() + ": no data rows");
}

}  // namespace sasim
