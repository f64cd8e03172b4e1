#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "chanlearn/harness.hpp"

namespace chanlearn {

// CSV layout: header `t,loss,running_avg,<extra...>` followed by one row per
// round. Values are written with 17 significant digits so a read-back
// reproduces every double exactly. All records must share the extra columns.
void write_csv(std::ostream& out, std::span<const RoundRecord> records);
void write_csv(const std::filesystem::path& path, std::span<const RoundRecord> records);
std::vector<RoundRecord> read_csv(std::istream& in);
std::vector<RoundRecord> read_csv(const std::filesystem::path& path);

/// Concatenates runs in seed order; each record gets a leading `seed` extra.
std::vector<RoundRecord> flatten_runs(std::span<const SeedRun> runs);

}  // namespace chanlearn
