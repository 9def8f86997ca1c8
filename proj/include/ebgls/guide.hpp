#pragma once

#include <cstdint>

#include "ebgls/instance.hpp"
#include "ebgls/penalty.hpp"
#include "ebgls/rational.hpp"

namespace ebgls {

/// Edge-augmented guide function h(s) = g(s) + lambda * sum of penalties of
/// the edges in s. With lambda = 0 or no penalties, h coincides with g.
/// Move acceptance is decided in exact integer arithmetic: a move with cost
/// delta `dg` and penalty-count delta `dp` improves h iff
/// dg * lambda.den + lambda.num * dp < 0.
struct GuideFunction {
  const Instance* inst = nullptr;
  Rational lambda{0, 1};
  const PenaltyStore* penalties = nullptr;

  std::int32_t penalty(std::int32_t a, std::int32_t b) const {
    return penalties == nullptr ? 0 : penalties->get(a, b);
  }

  bool improves_h(std::int64_t dg, std::int64_t dp) const {
    return static_cast<__int128>(dg) * lambda.den + static_cast<__int128>(lambda.num) * dp < 0;
  }

  /// h(s) - g(s) for a solution whose tour edges carry `pen_sum` total
  /// penalty count.
  Rational penalty_term(std::int64_t pen_sum) const { return lambda * pen_sum; }

  /// delta_h as a real number (reporting only; acceptance uses improves_h).
  double delta_h(std::int64_t dg, std::int64_t dp) const {
    return static_cast<double>(dg) + lambda.to_double() * static_cast<double>(dp);
  }
};

}  // namespace ebgls
