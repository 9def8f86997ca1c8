#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ebgls/edge.hpp"

namespace ebgls {

enum class WeightRule { kEuc2d, kCeil2d, kAtt, kGeo, kExplicit };

const char* weight_rule_name(WeightRule rule);

/// Immutable symmetric TSP instance. Distances are integers following the
/// TSPLIB conventions for each weight rule, which makes published optima
/// bit-exact. The full distance matrix is cached for instances up to
/// kMatrixCacheLimit cities; larger instances compute distances on demand.
///
/// Safe to share read-only across threads once constructed.
class Instance {
 public:
  static constexpr int kMatrixCacheLimit = 5000;
  static constexpr int kFullNeighborhoodLimit = 1000;
  static constexpr int kNearestNeighborCount = 20;

  /// Coordinate-based instance (EUC_2D, CEIL_2D, ATT or GEO).
  Instance(std::string name, WeightRule rule, std::vector<double> xs, std::vector<double> ys);

  /// Explicit-matrix instance. `matrix` is the full n-by-n weight matrix.
  Instance(std::string name, int n, std::vector<std::int32_t> matrix);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  WeightRule rule() const { return rule_; }
  bool has_coordinates() const { return !xs_.empty(); }
  double x(int city) const { return xs_[static_cast<std::size_t>(city)]; }
  double y(int city) const { return ys_[static_cast<std::size_t>(city)]; }

  std::int32_t distance(int a, int b) const {
    if (a == b) return 0;
    if (!matrix_.empty())
      return matrix_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                     static_cast<std::size_t>(b)];
    return compute_distance(a, b);
  }

  /// Full distance matrix when cached, nullptr otherwise (hot loops pick a
  /// specialized path).
  const std::int32_t* matrix_data() const { return matrix_.empty() ? nullptr : matrix_.data(); }

  std::int64_t edge_cost(EdgeKey e) const { return distance(e.lo, e.hi); }

  /// Candidate cities for 2-Opt move generation around `city`, sorted by
  /// ascending distance (ties by index). Full neighborhood for small
  /// instances, the 20 nearest neighbors otherwise.
  std::span<const std::int32_t> neighbors(int city) const {
    return {neighbors_.data() + static_cast<std::size_t>(city) * neighbor_count_,
            static_cast<std::size_t>(neighbor_count_)};
  }

  int neighbor_count() const { return neighbor_count_; }

 private:
  std::int32_t compute_distance(int a, int b) const;
  void build_distance_matrix();
  void build_neighbor_lists();
  void validate_matrix() const;

  std::string name_;
  int n_ = 0;
  WeightRule rule_ = WeightRule::kEuc2d;
  std::vector<double> xs_, ys_;
  std::vector<double> geo_lat_, geo_lon_;
  std::vector<std::int32_t> matrix_;
  std::vector<std::int32_t> neighbors_;
  int neighbor_count_ = 0;
};

/// Uniform random EUC_2D instance: map width and height are drawn from
/// (1e5, 1.1e6), city positions uniformly within the map. Deterministic for
/// a fixed seed.
Instance generate_random_instance(int n, std::uint64_t seed);

/// Coordinates of a generated instance, for writing TSPLIB output.
struct GeneratedInstance {
  std::string name;
  std::vector<double> xs, ys;
};
GeneratedInstance generate_random_coordinates(int n, std::uint64_t seed);

}  // namespace ebgls
