#pragma once

// Census runs: decide() over many fixture files with a worker pool.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfklift/spliff.hpp"

namespace hfklift {

struct BatchOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  DecideOptions decide;
};

struct BatchRow {
  Verdict verdict;
  std::optional<int> crossings;
};

struct BatchReport {
  std::vector<BatchRow> rows;  // sorted by name
  std::map<std::string, int> totals;
  std::map<std::optional<int>, std::map<std::string, int>> by_crossings;
  double wall_seconds = 0;
  unsigned jobs = 1;
  DecideOptions settings;
};

/// Crossing number from census-style names such as "12n67" or "m12n244".
std::optional<int> crossings_from_name(const std::string& name);

/// Fixture files named by a manifest (its "knots[].file" entries) or every
/// *.json file in a directory other than manifest.json.
std::vector<std::filesystem::path> collect_inputs(const std::filesystem::path& manifest_or_dir);

/// Decides every file; unreadable files become Unknown rows named after the file.
BatchReport run_batch(const std::vector<std::filesystem::path>& files, const BatchOptions& options);

void write_csv(const BatchReport& report, std::ostream& out);
nlohmann::json to_json(const BatchReport& report);
/// Per-crossing SpliFf / non-SpliFf / Unknown counts.
void write_summary(const BatchReport& report, std::ostream& out);

}  // namespace hfklift
