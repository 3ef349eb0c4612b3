#include "equidist/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

#include "equidist/error.hpp"

namespace equidist::geo {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Pruning slack: chord bounds are inflated so floating-point noise can never
// drop a candidate that ties or beats the current best.
constexpr double kBoundSlack = 1e-9;

// Squared 3D chord length on the unit sphere for a great-circle distance d.
double chord2_for_distance(double d_m) {
  const double theta = d_m / kEarthRadiusM;
  if (theta >= std::numbers::pi) return 4.0;
  const double s = std::sin(0.5 * theta);
  return 4.0 * s * s;
}

void to_xyz(const GeoPoint& p, double* out) {
  const double lat = p.lat * kDegToRad;
  const double lon = p.lon * kDegToRad;
  out[0] = std::cos(lat) * std::cos(lon);
  out[1] = std::cos(lat) * std::sin(lon);
  out[2] = std::sin(lat);
}

constexpr size_t kLeafSize = 8;

}  // namespace

void validate(const GeoPoint& p) {
  if (!(p.lat >= -90.0 && p.lat <= 90.0)) {
    throw ValidationError("lat out of range [-90, 90]: " + std::to_string(p.lat));
  }
  if (!(p.lon >= -180.0 && p.lon <= 180.0)) {
    throw ValidationError("lon out of range [-180, 180]: " + std::to_string(p.lon));
  }
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  validate(a);
  validate(b);
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlam = (b.lon - a.lon) * kDegToRad;
  const double sp = std::sin(0.5 * dphi);
  const double sl = std::sin(0.5 * dlam);
  double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusM * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

SpatialIndex::SpatialIndex(std::vector<Entry> entries) : entries_(std::move(entries)) {
  xyz_.resize(entries_.size() * 3);
  order_.resize(entries_.size());
  for (size_t i = 0; i < entries_.size(); ++i) {
    validate(entries_[i].point);
    to_xyz(entries_[i].point, &xyz_[3 * i]);
    order_[i] = i;
  }
  if (!entries_.empty()) {
    nodes_.reserve(2 * entries_.size() / kLeafSize + 2);
    nodes_.emplace_back();
    root_ = 0;
    build(0, entries_.size(), root_);
  }
}

void SpatialIndex::build(size_t begin, size_t end, int node_slot) {
  Node& init = nodes_[node_slot];
  init.begin = begin;
  init.end = end;
  if (end - begin <= kLeafSize) return;

  // Split on the axis with the widest extent.
  double lo[3], hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = 1e300;
    hi[a] = -1e300;
  }
  for (size_t i = begin; i < end; ++i) {
    const double* p = &xyz_[3 * order_[i]];
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (hi[a] - lo[a] > hi[axis] - lo[axis]) axis = a;
  }
  if (hi[axis] - lo[axis] == 0.0) return;  // all points coincide; keep as leaf

  const size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](size_t a, size_t b) { return xyz_[3 * a + axis] < xyz_[3 * b + axis]; });

  const int left = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  const int right = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Node& n = nodes_[node_slot];  // re-fetch: emplace_back may reallocate
  n.axis = axis;
  n.split = xyz_[3 * order_[mid] + axis];
  n.left = left;
  n.right = right;
  build(begin, mid + 1, left);
  build(mid + 1, end, right);
}

template <typename Visit>
void SpatialIndex::walk(const double* q, Visit& visit) const {
  // candidate() may shrink the visitor's bound; the far-side test re-reads it
  // after the near side has been searched.
  auto rec = [&](auto&& self, int id) -> void {
    const Node& n = nodes_[id];
    if (n.left < 0) {
      for (size_t i = n.begin; i < n.end; ++i) visit.candidate(order_[i]);
      return;
    }
    const double diff = q[n.axis] - n.split;
    const int near = diff <= 0.0 ? n.left : n.right;
    const int far = diff <= 0.0 ? n.right : n.left;
    self(self, near);
    if (diff * diff <= visit.bound()) self(self, far);
  };
  if (root_ >= 0) rec(rec, root_);
}

std::optional<SpatialIndex::Hit> SpatialIndex::nearest(
    const GeoPoint& p, std::optional<std::string_view> county_filter,
    std::optional<size_t> exclude_index) const {
  validate(p);
  if (entries_.empty()) return std::nullopt;
  double q[3];
  to_xyz(p, q);

  struct Visitor {
    const SpatialIndex* idx;
    const GeoPoint* p;
    const std::optional<std::string_view>* county;
    std::optional<size_t> exclude;
    double chord2 = 4.0 * (1.0 + kBoundSlack);
    bool found = false;
    size_t best_index = 0;
    double best_d = 0.0;

    double bound() const { return chord2; }
    void candidate(size_t i) {
      if (exclude && *exclude == i) return;
      const Entry& e = idx->entries_[i];
      if (*county && e.county != **county) return;
      const double d = haversine_distance(*p, e.point);
      const bool better =
          !found || d < best_d || (d == best_d && e.id < idx->entries_[best_index].id);
      if (better) {
        found = true;
        best_index = i;
        best_d = d;
        chord2 = chord2_for_distance(d) * (1.0 + kBoundSlack) + 1e-18;
      }
    }
  } v{this, &p, &county_filter, exclude_index};

  walk(q, v);
  if (!v.found) return std::nullopt;
  return Hit{v.best_index, v.best_d};
}

std::vector<SpatialIndex::Hit> SpatialIndex::k_nearest(const GeoPoint& p, size_t k,
                                                       std::optional<size_t> exclude_index) const {
  validate(p);
  if (k == 0 || entries_.empty()) return {};
  double q[3];
  to_xyz(p, q);

  struct Scored {
    double d;
    size_t index;
  };
  struct Visitor {
    const SpatialIndex* idx;
    const GeoPoint* p;
    std::optional<size_t> exclude;
    size_t k;
    double chord2 = 4.0 * (1.0 + kBoundSlack);
    std::vector<Scored> heap;  // max-heap on (d, id)

    bool worse(const Scored& a, const Scored& b) const {
      if (a.d != b.d) return a.d < b.d;
      return idx->entries_[a.index].id < idx->entries_[b.index].id;
    }
    double bound() const { return chord2; }
    void candidate(size_t i) {
      if (exclude && *exclude == i) return;
      const double d = haversine_distance(*p, idx->entries_[i].point);
      const Scored s{d, i};
      auto cmp = [this](const Scored& a, const Scored& b) { return worse(a, b); };
      if (heap.size() < k) {
        heap.push_back(s);
        std::push_heap(heap.begin(), heap.end(), cmp);
      } else if (worse(s, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        heap.back() = s;
        std::push_heap(heap.begin(), heap.end(), cmp);
      } else {
        return;
      }
      if (heap.size() == k) {
        chord2 = chord2_for_distance(heap.front().d) * (1.0 + kBoundSlack) + 1e-18;
      }
    }
  } v{this, &p, exclude_index, k};

  walk(q, v);
  std::sort(v.heap.begin(), v.heap.end(), [&](const Scored& a, const Scored& b) {
    if (a.d != b.d) return a.d < b.d;
    return entries_[a.index].id < entries_[b.index].id;
  });
  std::vector<Hit> out;
  out.reserve(v.heap.size());
  for (const Scored& s : v.heap) out.push_back(Hit{s.index, s.d});
  return out;
}

std::vector<SpatialIndex::Hit> SpatialIndex::within_radius(
    const GeoPoint& p, double radius_m, std::optional<size_t> exclude_index) const {
  validate(p);
  if (radius_m < 0.0) throw ValidationError("within_radius: negative radius");
  if (entries_.empty()) return {};
  double q[3];
  to_xyz(p, q);

  struct Visitor {
    const SpatialIndex* idx;
    const GeoPoint* p;
    std::optional<size_t> exclude;
    double radius;
    double chord2;
    std::vector<Hit> hits;

    double bound() const { return chord2; }
    void candidate(size_t i) {
      if (exclude && *exclude == i) return;
      const double d = haversine_distance(*p, idx->entries_[i].point);
      if (d <= radius) hits.push_back(Hit{i, d});
    }
  } v{this, &p, exclude_index, radius_m,
      chord2_for_distance(radius_m) * (1.0 + kBoundSlack) + 1e-18};

  walk(q, v);
  return v.hits;
}

std::optional<DistanceResult> find_nearest_monitor(const GeoPoint& p, const SpatialIndex& idx,
                                                   std::optional<std::string_view> home_county,
                                                   bool within_county_only) {
  if (within_county_only && !home_county) {
    throw ValidationError("within-county query requires the tract's county id");
  }
  const auto hit = idx.nearest(p, within_county_only ? home_county : std::nullopt);
  if (!hit) return std::nullopt;
  const auto& e = idx.entries()[hit->entry_index];
  DistanceResult r;
  r.monitor_id = e.id;
  r.distance_m = hit->distance_m;
  r.same_county = home_county && e.county == *home_county;
  return r;
}

DistanceResult nearest_monitor(const GeoPoint& p, const SpatialIndex& idx,
                               std::optional<std::string_view> home_county,
                               bool within_county_only) {
  auto r = find_nearest_monitor(p, idx, home_county, within_county_only);
  if (!r) {
    throw NoCandidateError(within_county_only
                               ? "no monitor in county '" + std::string(*home_county) + "'"
                               : "no monitors in index");
  }
  return *r;
}

}  // namespace equidist::geo
