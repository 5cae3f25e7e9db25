#include "arsr/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "arsr/errors.hpp"

namespace arsr::pipeline {

const char* const kCsvHeader =
    "frame,m_k,phi_k,bound_l1l1_oracle,bound_cs_oracle,est_err,rec_err,s_hat,xi_hat,hbar_hat,"
    "flags";

namespace {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_count(long v) {
  if (v == kNoCount) return "";
  return std::to_string(v);
}

double parse_double(const std::string& cell) {
  if (cell.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(cell);
}

long parse_count(const std::string& cell, long missing) {
  if (cell.empty()) return missing;
  return std::stol(cell);
}

}  // namespace

void write_csv(const std::vector<FrameMetrics>& metrics, const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // fixed newline bytes on every platform
  if (!out) throw IoError(path + ": cannot open for writing");
  out << kCsvHeader << "\n";
  for (const auto& m : metrics) {
    out << m.k << ',' << m.m_k << ',' << fmt_double(m.phi_k) << ','
        << fmt_double(m.bound_l1l1_oracle) << ',' << fmt_double(m.bound_cs_oracle) << ','
        << fmt_double(m.est_err) << ',' << fmt_double(m.rec_err) << ','
        << (m.s_hat < 0 ? std::string() : std::to_string(m.s_hat)) << ','
        << fmt_count(m.xi_hat) << ',' << fmt_count(m.hbar_hat) << ',' << m.flags << "\n";
  }
  if (!out) throw IoError(path + ": write failed");
}

std::vector<FrameMetrics> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw IoError(path + ": unexpected CSV header");

  std::vector<FrameMetrics> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (cells.size() < 11) cells.emplace_back();
    FrameMetrics m;
    m.k = std::stol(cells[0]);
    m.m_k = std::stol(cells[1]);
    m.phi_k = parse_double(cells[2]);
    m.bound_l1l1_oracle = parse_double(cells[3]);
    m.bound_cs_oracle = parse_double(cells[4]);
    m.est_err = parse_double(cells[5]);
    m.rec_err = parse_double(cells[6]);
    m.s_hat = parse_count(cells[7], -1);
    m.xi_hat = parse_count(cells[8], kNoCount);
    m.hbar_hat = parse_count(cells[9], kNoCount);
    m.flags = cells[10];
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace arsr::pipeline
