#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ddsim/evolve.hpp"

namespace ddsim {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);

// One CSV row per sampled cycle.
struct TrajectoryRow {
  std::int64_t cycle = 0;
  double time = 0.0;
  double fidelity = 0.0;
  double coherence = 0.0;
  double trace_distance = 0.0;

  friend bool operator==(const TrajectoryRow&, const TrajectoryRow&) = default;
};

inline constexpr std::string_view kTrajectoryHeader = "cycle,time,fidelity,coherence,trace_distance";

std::vector<TrajectoryRow> trajectory_rows(const TrajectoryResult& result);
std::string write_trajectory_csv(const std::vector<TrajectoryRow>& rows);
std::vector<TrajectoryRow> read_trajectory_csv(std::string_view text);

struct SweepRow {
  double delta_t = 0.0;
  double omega_c_delta_t = 0.0;
  std::int64_t n_cycles = 0;
  double infidelity = 0.0;
  double trace_distance = 0.0;
  double ratio = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline constexpr std::string_view kSweepHeader = "delta_t,omega_c_delta_t,n_cycles,infidelity,trace_distance,ratio";

std::string write_sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::string_view text);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ddsim
