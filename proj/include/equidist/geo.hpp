#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace equidist::geo {

// Mean Earth radius (IUGG R1) used by every distance in the project.
inline constexpr double kEarthRadiusM = 6371008.8;

// WGS84 decimal degrees. Validated on construction via validate().
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;
};

// Throws ValidationError naming the offending field.
void validate(const GeoPoint& p);

// Great-circle distance in meters on the sphere of radius kEarthRadiusM.
// Symmetric bit-for-bit; zero iff the points coincide (up to floating point).
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

struct DistanceResult {
  std::string monitor_id;
  double distance_m = 0.0;
  bool same_county = false;
};

// Nearest-site queries over a fixed set of (id, county, point) entries.
//
// Backed by a kd-tree on unit-sphere coordinates; chord distance is only used
// to prune subtrees (with slack), every surviving candidate is scored with
// haversine_distance, so results match an exhaustive scan including the
// tie-break by smallest id. Immutable after construction; concurrent reads
// are safe.
class SpatialIndex {
 public:
  struct Entry {
    std::string id;
    std::string county;
    GeoPoint point;
  };

  SpatialIndex() = default;
  explicit SpatialIndex(std::vector<Entry> entries);

  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }

  struct Hit {
    size_t entry_index;
    double distance_m;
  };

  // Nearest entry to p; ties broken by smallest id. county_filter restricts
  // the candidate set. exclude_index skips one entry (self-queries).
  std::optional<Hit> nearest(const GeoPoint& p,
                             std::optional<std::string_view> county_filter = std::nullopt,
                             std::optional<size_t> exclude_index = std::nullopt) const;

  // k nearest entries ordered by (distance, id); fewer if the index is small.
  std::vector<Hit> k_nearest(const GeoPoint& p, size_t k,
                             std::optional<size_t> exclude_index = std::nullopt) const;

  // All entries with haversine distance <= radius_m, unordered.
  std::vector<Hit> within_radius(const GeoPoint& p, double radius_m,
                                 std::optional<size_t> exclude_index = std::nullopt) const;

 private:
  struct Node {
    int axis = 0;          // split axis in xyz
    double split = 0.0;    // split coordinate
    int left = -1, right = -1;
    size_t begin = 0, end = 0;  // leaf range into order_
  };

  void build(size_t begin, size_t end, int node_slot);

  template <typename Visit>
  void walk(const double* q, Visit& visit) const;

  std::vector<Entry> entries_;
  std::vector<double> xyz_;      // 3 doubles per entry
  std::vector<size_t> order_;    // permutation for leaf ranges
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Nearest monitor to p. With within_county_only, candidates are restricted to
// home_county (which must then be provided); same_county in the result is set
// from home_county when known. Throws NoCandidateError when no candidate
// exists, ValidationError for bad inputs.
DistanceResult nearest_monitor(const GeoPoint& p, const SpatialIndex& idx,
                               std::optional<std::string_view> home_county = std::nullopt,
                               bool within_county_only = false);

// Same query, empty optional instead of NoCandidateError.
std::optional<DistanceResult> find_nearest_monitor(
    const GeoPoint& p, const SpatialIndex& idx,
    std::optional<std::string_view> home_county = std::nullopt,
    bool within_county_only = false);

}  // namespace equidist::geo
