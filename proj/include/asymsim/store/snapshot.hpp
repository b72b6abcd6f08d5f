#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "asymsim/engine/state.hpp"

namespace asymsim {

inline constexpr std::uint32_t kSnapshotVersion = 1;

// Versioned binary image of a between-rounds state, generator included:
// restore(snapshot(s)) == s, so a resumed run continues the uninterrupted
// event stream exactly.
std::vector<std::uint8_t> snapshot_state(const SimulationState& state);

// Throws ParseError on a bad magic, an unsupported version, or corrupt bytes.
SimulationState restore_state(std::span<const std::uint8_t> bytes);

void write_snapshot(const SimulationState& state, const std::filesystem::path& path);
SimulationState read_snapshot(const std::filesystem::path& path);

}  // namespace asymsim
