#include "ebgls/gls.hpp"

#include <stdexcept>

namespace ebgls {

Rational compute_lambda(std::int64_t first_local_opt_cost, int n, const Rational& coeff) {
  if (first_local_opt_cost <= 0)
    throw std::invalid_argument("compute_lambda: non-positive local optimum cost");
  if (n < 3) throw std::invalid_argument("compute_lambda: n must be at least 3");
  if (compare(coeff, Rational{0, 1}) <= 0)
    throw std::invalid_argument("compute_lambda: coefficient must be positive");
  return Rational(coeff.num * first_local_opt_cost, coeff.den * static_cast<std::int64_t>(n));
}

Rational utility(bool in_solution, std::int64_t cost, std::int32_t penalty) {
  if (!in_solution) return Rational{0, 1};
  return Rational(cost, static_cast<std::int64_t>(penalty) + 1);
}

}  // namespace ebgls
