#include "chanlearn/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "chanlearn/error.hpp"

namespace chanlearn {

namespace {

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end)
    fail(ErrorKind::kIo, "csv line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

void write_csv(std::ostream& out, std::span<const RoundRecord> records) {
  out << "t,loss,running_avg";
  if (!records.empty()) {
    for (const auto& [name, value] : records.front().extras) out << ',' << name;
  }
  out << '\n';
  for (const auto& r : records) {
    require(r.extras.size() == records.front().extras.size(), ErrorKind::kInvalidParameter,
            "records disagree on extra columns");
    out << r.t << ',' << format_double(r.loss) << ',' << format_double(r.running_avg);
    for (std::size_t k = 0; k < r.extras.size(); ++k) {
      require(r.extras[k].first == records.front().extras[k].first,
              ErrorKind::kInvalidParameter, "records disagree on extra columns");
      out << ',' << format_double(r.extras[k].second);
    }
    out << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "csv write failed");
}

void write_csv(const std::filesystem::path& path, std::span<const RoundRecord> records) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  write_csv(out, records);
}

std::vector<RoundRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::kIo, "csv is empty");
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "t" || header[1] != "loss" || header[2] != "running_avg")
    fail(ErrorKind::kIo, "csv header must start with t,loss,running_avg");

  std::vector<RoundRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      fail(ErrorKind::kIo, "csv line " + std::to_string(lineno) + ": wrong column count");
    RoundRecord r;
    std::size_t t = 0;
    const auto [ptr, ec] = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), t);
    if (ec != std::errc() || ptr != cells[0].data() + cells[0].size())
      fail(ErrorKind::kIo, "csv line " + std::to_string(lineno) + ": bad round index");
    r.t = t;
    r.loss = parse_double(cells[1], lineno);
    r.running_avg = parse_double(cells[2], lineno);
    for (std::size_t k = 3; k < cells.size(); ++k)
      r.extras.emplace_back(header[k], parse_double(cells[k], lineno));
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<RoundRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return read_csv(in);
}

std::vector<RoundRecord> flatten_runs(std::span<const SeedRun> runs) {
  std::vector<RoundRecord> out;
  for (const auto& run : runs) {
    for (const auto& r : run.records) {
      RoundRecord flat = r;
      flat.extras.insert(flat.extras.begin(), {"seed", static_cast<double>(run.seed)});
      out.push_back(std::move(flat));
    }
  }
  return out;
}

}  // namespace chanlearn
