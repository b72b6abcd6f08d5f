#pragma once

#include <filesystem>
#include <string>

#include "asymsim/engine/run_log.hpp"

namespace asymsim {

inline constexpr int kRunLogVersion = 1;

// One line per record, no trailing newline. The acceptance suite stitches
// resumed runs together from these pieces, so the serialization is stable
// down to the byte.
std::string serialize_header(const ScenarioConfig& config);
std::string serialize_event(const Event& event);
std::string serialize_summary(const StateSummary& summary);

// header line, one event per line, summary line. Throws IoError with the
// path on filesystem problems.
void write_run_log(const RunLog& log, const std::filesystem::path& path);

// Throws ParseError naming the line on malformed records, a missing header,
// an unsupported version, or a missing final summary.
RunLog read_run_log(const std::filesystem::path& path);

}  // namespace asymsim
