#include "ddsim/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ddsim {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::vector<std::string_view>> csv_records(std::string_view text, std::string_view header) {
  std::vector<std::vector<std::string_view>> rows;
  bool seen_header = false;
  const std::size_t columns = split(header, ',').size();
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != header) throw std::runtime_error("unexpected CSV header: " + std::string(line));
      seen_header = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != columns) throw std::runtime_error("CSV row has wrong column count: " + std::string(line));
    rows.push_back(std::move(fields));
  }
  if (!seen_header) throw std::runtime_error("CSV is missing its header");
  return rows;
}

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("invalid integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("invalid number '" + std::string(text) + "'");
  }
  return v;
}

std::vector<TrajectoryRow> trajectory_rows(const TrajectoryResult& result) {
  std::vector<TrajectoryRow> rows;
  rows.reserve(result.size());
  for (std::size_t k = 0; k < result.size(); ++k) {
    rows.push_back({result.cycles[k], result.times[k], result.fidelity[k], result.coherence[k],
                    result.trace_distance_to_initial[k]});
  }
  return rows;
}

std::string write_trajectory_csv(const std::vector<TrajectoryRow>& rows) {
  std::ostringstream os;
  os << kTrajectoryHeader << '\n';
  for (const auto& r : rows) {
    os << r.cycle << ',' << format_double(r.time) << ',' << format_double(r.fidelity) << ','
       << format_double(r.coherence) << ',' << format_double(r.trace_distance) << '\n';
  }
  return os.str();
}

std::vector<TrajectoryRow> read_trajectory_csv(std::string_view text) {
  std::vector<TrajectoryRow> rows;
  for (const auto& f : csv_records(text, kTrajectoryHeader)) {
    rows.push_back({parse_int(f[0]), parse_double(f[1]), parse_double(f[2]), parse_double(f[3]), parse_double(f[4])});
  }
  return rows;
}

std::string write_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << format_double(r.delta_t) << ',' << format_double(r.omega_c_delta_t) << ',' << r.n_cycles << ','
       << format_double(r.infidelity) << ',' << format_double(r.trace_distance) << ',' << format_double(r.ratio)
       << '\n';
  }
  return os.str();
}

std::vector<SweepRow> read_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  for (const auto& f : csv_records(text, kSweepHeader)) {
    rows.push_back({parse_double(f[0]), parse_double(f[1]), parse_int(f[2]), parse_double(f[3]), parse_double(f[4]),
                    parse_double(f[5])});
  }
  return rows;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace ddsim
