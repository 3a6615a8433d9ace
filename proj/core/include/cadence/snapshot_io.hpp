#pragma once

#include "cadence/data_model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cadence {

// Snapshot log format: one JSON object per line with the keys
//
//   app_id     string   (required)
//   category   string   (required)
//   day        string   ISO-8601 date, YYYY-MM-DD (required)
//   rank       integer  >= 1 (optional)
//   rating     number   in [1, 5] (required)
//   version    string   (required)
//   whats_new  string   (optional)
//
// Keys are written in the order above; unknown keys are rejected. Blank lines
// are skipped so files can be concatenated.

[[nodiscard]] std::string serialize_snapshot(const AppSnapshot& snapshot);

// Throws ParseError for malformed lines, ValidationError for range violations.
[[nodiscard]] AppSnapshot parse_snapshot_line(const std::string& line, std::size_t line_no = 0);

// Groups by app_id (histories ordered by app_id, snapshots by day). Duplicate
// (app_id, day) pairs are a ValidationError naming the offending line.
[[nodiscard]] std::vector<AppHistory> parse_snapshots(std::istream& in);

void write_snapshots(std::ostream& out, const std::vector<AppHistory>& histories);

} // namespace cadence
