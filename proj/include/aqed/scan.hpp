#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "aqed/config.hpp"
#include "aqed/fieldobs.hpp"
#include "aqed/table.hpp"

namespace aqed::scan {

// One operating point of a scan.
struct GridPoint {
  int ix = 0;
  int iy = 0;
  double detuning = 0;  // delta_p - Delta_1, Gamma units
  double delta = 0;     // two-photon detuning, Gamma units
};

std::vector<GridPoint> grid(const config::ScanConfig& cfg);

struct PointResult {
  GridPoint point;
  channels::DerivedChannel ch1;
  channels::DerivedChannel ch2;
  double s1 = 0;
  double s2 = 0;
  fieldobs::CorrelationSet set;
};

/// Full CorrelationSet at one point through the configured route.
PointResult evaluate(const config::ScanConfig& cfg, const GridPoint& point);

/// Column order of the scan table (fixed; documented in the README).
std::vector<std::string> columns(const config::ScanConfig& cfg);

/// Evaluates every grid point, `jobs` at a time; rows come back in grid order, so the
/// output is identical for any job count.
table::Table run_scan(const config::ScanConfig& cfg, int jobs = 1);

nlohmann::ordered_json to_json(const PointResult& r, const config::ScanConfig& cfg);

}  // namespace aqed::scan
