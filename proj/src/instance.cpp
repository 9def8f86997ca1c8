#include "ebgls/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ebgls/rng.hpp"

namespace ebgls {

namespace {

constexpr double kGeoPi = 3.141592;
constexpr double kGeoEarthRadius = 6378.388;

// Degrees.minutes encoding to radians, truncating toward zero.
double geo_radians(double coord) {
  const double deg = std::trunc(coord);
  const double min = coord - deg;
  return kGeoPi * (deg + 5.0 * min / 3.0) / 180.0;
}

std::int32_t nint(double x) { return static_cast<std::int32_t>(std::floor(x + 0.5)); }

}  // namespace

const char* weight_rule_name(WeightRule rule) {
  switch (rule) {
    case WeightRule::kEuc2d: return "EUC_2D";
    case WeightRule::kCeil2d: return "CEIL_2D";
    case WeightRule::kAtt: return "ATT";
    case WeightRule::kGeo: return "GEO";
    case WeightRule::kExplicit: return "EXPLICIT";
  }
  return "?";
}

Instance::Instance(std::string name, WeightRule rule, std::vector<double> xs,
                   std::vector<double> ys)
    : name_(std::move(name)), n_(static_cast<int>(xs.size())), rule_(rule), xs_(std::move(xs)),
      ys_(std::move(ys)) {
  if (rule_ == WeightRule::kExplicit)
    throw std::invalid_argument("Instance: explicit rule requires a matrix");
  if (n_ < 3) throw std::invalid_argument("Instance: need at least 3 cities");
  if (ys_.size() != xs_.size()) throw std::invalid_argument("Instance: coordinate size mismatch");
  if (rule_ == WeightRule::kGeo) {
    geo_lat_.reserve(xs_.size());
    geo_lon_.reserve(ys_.size());
    for (double v : xs_) geo_lat_.push_back(geo_radians(v));
    for (double v : ys_) geo_lon_.push_back(geo_radians(v));
  }
  if (n_ <= kMatrixCacheLimit) {
    build_distance_matrix();
    validate_matrix();
  }
  build_neighbor_lists();
}

Instance::Instance(std::string name, int n, std::vector<std::int32_t> matrix)
    : name_(std::move(name)), n_(n), rule_(WeightRule::kExplicit), matrix_(std::move(matrix)) {
  if (n_ < 3) throw std::invalid_argument("Instance: need at least 3 cities");
  if (matrix_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
    throw std::invalid_argument("Instance: matrix size mismatch");
  validate_matrix();
  build_neighbor_lists();
}

std::int32_t Instance::compute_distance(int a, int b) const {
  const double xd = xs_[static_cast<std::size_t>(a)] - xs_[static_cast<std::size_t>(b)];
  const double yd = ys_[static_cast<std::size_t>(a)] - ys_[static_cast<std::size_t>(b)];
  switch (rule_) {
    case WeightRule::kEuc2d:
      return nint(std::sqrt(xd * xd + yd * yd));
    case WeightRule::kCeil2d:
      return static_cast<std::int32_t>(std::ceil(std::sqrt(xd * xd + yd * yd)));
    case WeightRule::kAtt: {
      const double rij = std::sqrt((xd * xd + yd * yd) / 10.0);
      const std::int32_t tij = nint(rij);
      return tij < rij ? tij + 1 : tij;
    }
    case WeightRule::kGeo: {
      const double q1 = std::cos(geo_lon_[static_cast<std::size_t>(a)] -
                                 geo_lon_[static_cast<std::size_t>(b)]);
      const double q2 = std::cos(geo_lat_[static_cast<std::size_t>(a)] -
                                 geo_lat_[static_cast<std::size_t>(b)]);
      const double q3 = std::cos(geo_lat_[static_cast<std::size_t>(a)] +
                                 geo_lat_[static_cast<std::size_t>(b)]);
      return static_cast<std::int32_t>(
          kGeoEarthRadius * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
    }
    case WeightRule::kExplicit:
      break;
  }
  throw std::logic_error("Instance: no coordinates for explicit rule");
}

void Instance::build_distance_matrix() {
  const std::size_t n = static_cast<std::size_t>(n_);
  matrix_.assign(n * n, 0);
  for (int a = 0; a < n_; ++a) {
    for (int b = a + 1; b < n_; ++b) {
      const std::int32_t d = compute_distance(a, b);
      matrix_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = d;
      matrix_[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] = d;
    }
  }
}

void Instance::validate_matrix() const {
  const std::size_t n = static_cast<std::size_t>(n_);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::int32_t ab = matrix_[a * n + b];
      const std::int32_t ba = matrix_[b * n + a];
      if (ab != ba)
        throw std::invalid_argument("Instance '" + name_ + "': asymmetric distances");
      if (ab <= 0)
        throw std::invalid_argument("Instance '" + name_ + "': non-positive edge cost");
    }
  }
}

void Instance::build_neighbor_lists() {
  neighbor_count_ = n_ > kFullNeighborhoodLimit ? kNearestNeighborCount : n_ - 1;
  neighbors_.assign(static_cast<std::size_t>(n_) * neighbor_count_, 0);

  std::vector<std::int32_t> others(static_cast<std::size_t>(n_ - 1));
  for (int c = 0; c < n_; ++c) {
    int idx = 0;
    for (int o = 0; o < n_; ++o)
      if (o != c) others[static_cast<std::size_t>(idx++)] = o;
    const auto by_distance = [&](std::int32_t a, std::int32_t b) {
      const std::int32_t da = distance(c, a);
      const std::int32_t db = distance(c, b);
      return da != db ? da < db : a < b;
    };
    if (neighbor_count_ < n_ - 1) {
      std::partial_sort(others.begin(), others.begin() + neighbor_count_, others.end(),
                        by_distance);
    } else {
      std::sort(others.begin(), others.end(), by_distance);
    }
    std::copy(others.begin(), others.begin() + neighbor_count_,
              neighbors_.begin() + static_cast<std::size_t>(c) * neighbor_count_);
  }
}

GeneratedInstance generate_random_coordinates(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("generate_random_instance: n must be at least 3");
  Rng rng(seed);
  const double width = 1e5 + rng.unit() * 1e6;
  const double height = 1e5 + rng.unit() * 1e6;
  GeneratedInstance out;
  out.name = "rand" + std::to_string(n) + "s" + std::to_string(seed);
  out.xs.reserve(static_cast<std::size_t>(n));
  out.ys.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.xs.push_back(rng.unit() * width);
    out.ys.push_back(rng.unit() * height);
  }
  return out;
}

Instance generate_random_instance(int n, std::uint64_t seed) {
  GeneratedInstance g = generate_random_coordinates(n, seed);
  return Instance(std::move(g.name), WeightRule::kEuc2d, std::move(g.xs), std::move(g.ys));
}

}  // namespace ebgls
