#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

namespace aqed::verify {

enum class Level { Fast, Full };

struct Measurement {
  std::string name;
  double value = 0;
  double tolerance = 0;  // 0 when the entry is informational
  bool ok = true;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  Level level = Level::Fast;
  bool passed = false;
  double seconds = 0;
  std::vector<Measurement> measurements;
  std::vector<std::string> notes;
};

struct Criterion {
  int id;
  std::string title;
  Level level;
  std::function<void(CriterionResult&)> run;
};

const std::vector<Criterion>& criteria();

CriterionResult run_criterion(const Criterion& c);

/// Runs every criterion of `level` (full includes fast).
std::vector<CriterionResult> run(Level level);

/// One line per criterion: "[PASS] 3 EIT width ... (measured ...)".
std::string summary_line(const CriterionResult& r);

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results);

Level parse_level(const std::string& s);
const char* to_string(Level level);

}  // namespace aqed::verify
