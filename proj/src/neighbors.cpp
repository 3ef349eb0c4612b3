#include "equidist/neighbors.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "equidist/csv.hpp"
#include "equidist/error.hpp"

namespace equidist::neighbors {

namespace {

geo::SpatialIndex index_centroids(const std::vector<geo::GeoPoint>& centroids) {
  std::vector<geo::SpatialIndex::Entry> entries;
  entries.reserve(centroids.size());
  for (size_t i = 0; i < centroids.size(); ++i) {
    // Zero-padded ids keep the index's lexicographic tie-break aligned with
    // numeric order.
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%012zu", i);
    entries.push_back({buf, "", centroids[i]});
  }
  return geo::SpatialIndex(std::move(entries));
}

[[noreturn]] void throw_duplicate(size_t i, size_t j) {
  throw ValidationError("duplicate centroid coordinates at rows " + std::to_string(i) + " and " +
                        std::to_string(j) + " (zero distance gives an infinite weight)");
}

}  // namespace

double NeighborGraph::row_weight_sum(int i) const {
  double s = 0.0;
  for (const Edge& e : rows[i]) s += e.w;
  return s;
}

long NeighborGraph::edge_count() const {
  long c = 0;
  for (const auto& r : rows) c += static_cast<long>(r.size());
  return c;
}

bool NeighborGraph::is_symmetric() const {
  for (int i = 0; i < n; ++i) {
    for (const Edge& e : rows[i]) {
      const auto& back = rows[e.j];
      auto it = std::lower_bound(back.begin(), back.end(), i,
                                 [](const Edge& a, int v) { return a.j < v; });
      if (it == back.end() || it->j != i || it->w != e.w) return false;
    }
  }
  return true;
}

int NeighborGraph::connected_components() const {
  std::vector<int> comp(n, -1);
  std::vector<int> stack;
  int n_comp = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = n_comp;
    stack.push_back(s);
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (const Edge& e : rows[i]) {
        if (comp[e.j] < 0) {
          comp[e.j] = n_comp;
          stack.push_back(e.j);
        }
      }
    }
    ++n_comp;
  }
  return n_comp;
}

double auto_threshold(const std::vector<geo::GeoPoint>& centroids) {
  if (centroids.size() < 2) {
    throw ValidationError("auto_threshold: need at least 2 centroids, got " +
                          std::to_string(centroids.size()));
  }
  const geo::SpatialIndex idx = index_centroids(centroids);
  double max_nn = 0.0;
  for (size_t i = 0; i < centroids.size(); ++i) {
    const auto hit = idx.nearest(centroids[i], std::nullopt, i);
    if (hit->distance_m <= 0.0) throw_duplicate(i, hit->entry_index);
    max_nn = std::max(max_nn, hit->distance_m);
  }
  return max_nn;
}

NeighborGraph build_graph(const std::vector<geo::GeoPoint>& centroids, const NeighborConfig& cfg) {
  const int n = static_cast<int>(centroids.size());
  if (n < 2) throw ValidationError("build_graph: need at least 2 centroids");
  if (cfg.scheme == Scheme::KNearest && cfg.k < 1) {
    throw ValidationError("build_graph: k must be >= 1");
  }
  if (cfg.threshold_m && *cfg.threshold_m <= 0.0) {
    throw ValidationError("build_graph: threshold_m must be > 0");
  }

  NeighborGraph g;
  g.n = n;
  g.rows.resize(n);
  g.meta.config = cfg;

  const geo::SpatialIndex idx = index_centroids(centroids);

  if (cfg.scheme == Scheme::DistanceThreshold) {
    const double thr = cfg.threshold_m ? *cfg.threshold_m : auto_threshold(centroids);
    g.meta.realized_threshold_m = thr;
    // Each unordered pair enters once (j > i) and is mirrored, so w_ij = w_ji
    // bit for bit.
    for (int i = 0; i < n; ++i) {
      for (const auto& hit : idx.within_radius(centroids[i], thr, static_cast<size_t>(i))) {
        const int j = static_cast<int>(hit.entry_index);
        if (j <= i) continue;
        if (hit.distance_m <= 0.0) throw_duplicate(i, j);
        const double w = 1.0 / hit.distance_m;
        g.rows[i].push_back({j, w});
        g.rows[j].push_back({i, w});
        if (hit.distance_m == thr) ++g.meta.edges_at_threshold;
      }
    }
  } else {
    const size_t k = static_cast<size_t>(cfg.k);
    for (int i = 0; i < n; ++i) {
      for (const auto& hit : idx.k_nearest(centroids[i], k, static_cast<size_t>(i))) {
        if (hit.distance_m <= 0.0) throw_duplicate(i, hit.entry_index);
        g.rows[i].push_back({static_cast<int>(hit.entry_index), 1.0 / hit.distance_m});
      }
    }
  }

  for (auto& row : g.rows) {
    std::sort(row.begin(), row.end(), [](const Edge& a, const Edge& b) { return a.j < b.j; });
  }
  return g;
}

std::string to_edge_csv(const NeighborGraph& g) {
  std::ostringstream out;
  out << "i,j,weight\n";
  for (int i = 0; i < g.n; ++i) {
    for (const Edge& e : g.rows[i]) {
      out << i << ',' << e.j << ',' << csv::format_double(e.w) << '\n';
    }
  }
  return out.str();
}

void write_edge_csv(const NeighborGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << to_edge_csv(g);
}

}  // namespace equidist::neighbors
