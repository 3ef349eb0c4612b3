#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equidist/geo.hpp"

namespace equidist {

// One census-tract record. Demographic proportions live in [0, 1];
// median_income_100k is dollars / 1e5. distance fields are filled by the
// pipeline (or by the synthetic generator).
struct Tract {
  std::string tract_id;
  std::string county_id;
  std::string state_id;
  int epa_region = 0;  // 1..10
  geo::GeoPoint centroid;
  long population = 0;
  double area_km2 = 0.0;
  bool urban = false;

  double prop_aian = 0.0;
  double prop_asian = 0.0;
  double prop_black = 0.0;
  double prop_hispanic = 0.0;
  double prop_white = 0.0;
  double prop_nonwhite = 0.0;
  double prop_poverty = 0.0;
  double median_income_100k = 0.0;
  double pm25 = 0.0;

  std::optional<double> distance_m;                 // nearest monitor, any county
  std::optional<double> distance_within_county_m;   // absent if county has no monitor
  std::optional<double> log_distance;               // ln(max(distance_m, 1))
  std::optional<double> pm25_zscore;                // filled by the pipeline
};

struct TractTable {
  std::vector<Tract> rows;

  size_t size() const { return rows.size(); }
  bool empty() const { return rows.empty(); }
};

struct MonitorSite {
  std::string monitor_id;
  std::string county_id;
  geo::GeoPoint centroid;
  bool active = true;
};

struct MonitorTable {
  std::vector<MonitorSite> rows;

  size_t size() const { return rows.size(); }
};

}  // namespace equidist
