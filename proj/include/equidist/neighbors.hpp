#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equidist/geo.hpp"

namespace equidist::neighbors {

enum class Scheme { DistanceThreshold, KNearest };

struct NeighborConfig {
  Scheme scheme = Scheme::DistanceThreshold;
  int k = 5;  // used by KNearest
  // When absent under DistanceThreshold, computed as the maximum 1-NN
  // distance, which guarantees every tract at least one neighbor.
  std::optional<double> threshold_m;
};

struct Edge {
  int j = 0;
  double w = 0.0;  // 1 / distance_m
};

// Sparse weighted adjacency over tract centroids. Rows hold neighbor indices
// in increasing order. DistanceThreshold graphs are exactly symmetric (each
// unordered pair is computed once and mirrored); KNearest rows may be
// asymmetric.
struct NeighborGraph {
  int n = 0;
  std::vector<std::vector<Edge>> rows;

  struct Meta {
    NeighborConfig config;
    double realized_threshold_m = 0.0;  // DistanceThreshold only
    // Unordered pairs whose distance equals the threshold exactly. The
    // auto-threshold is itself a realized 1-NN distance, so its boundary pair
    // is admitted (predicate d <= threshold) and counted here.
    long edges_at_threshold = 0;
  } meta;

  double row_weight_sum(int i) const;
  long edge_count() const;  // directed entries
  bool is_symmetric() const;
  int connected_components() const;  // over the symmetrized structure
};

// Maximum over tracts of the distance to their nearest other tract.
// Throws ValidationError for < 2 centroids or duplicate coordinates
// (a zero distance would produce an infinite weight); the error names the
// offending pair.
double auto_threshold(const std::vector<geo::GeoPoint>& centroids);

NeighborGraph build_graph(const std::vector<geo::GeoPoint>& centroids, const NeighborConfig& cfg);

// Edge-list CSV "i,j,weight" (directed entries, row order).
std::string to_edge_csv(const NeighborGraph& g);
void write_edge_csv(const NeighborGraph& g, const std::string& path);

}  // namespace equidist::neighbors
