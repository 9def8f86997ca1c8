#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ebgls/gls.hpp"
#include "ebgls/instance.hpp"
#include "ebgls/tour.hpp"
#include "ebgls/tsplib.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return std::filesystem::path(EBGLS_DATA_DIR); }

inline std::filesystem::path tsplib_path(const std::string& name) {
  return data_dir() / "tsplib" / name;
}

inline ebgls::Instance load(const std::string& file_name) {
  return ebgls::load_tsplib_file(tsplib_path(file_name));
}

inline ebgls::OptimumRegistry registry() {
  return ebgls::OptimumRegistry::load(data_dir() / "optima.txt");
}

/// Independent full evaluation of the augmented objective: g plus
/// lambda times the summed penalties of the tour's edges, as exact parts.
struct FullEval {
  std::int64_t g = 0;
  std::int64_t pen = 0;
};

inline FullEval full_eval(const ebgls::Instance& inst, std::span<const std::int32_t> order,
                          const ebgls::PenaltyStore* penalties) {
  FullEval out;
  const std::size_t n = order.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::int32_t a = order[k];
    const std::int32_t b = order[k + 1 == n ? 0 : k + 1];
    out.g += inst.distance(a, b);
    if (penalties != nullptr) out.pen += penalties->get(ebgls::make_edge(a, b));
  }
  return out;
}

/// Small explicit-matrix instance helper.
inline ebgls::Instance explicit_instance(int n, const std::vector<std::int32_t>& matrix,
                                         const std::string& name = "synthetic") {
  return ebgls::Instance(name, n, matrix);
}

/// Four cities on a 10x10 square: perimeter cost 40, crossing tours cost 48.
inline ebgls::Instance unit_square_instance() {
  return ebgls::Instance("square4", ebgls::WeightRule::kEuc2d, {0.0, 10.0, 10.0, 0.0},
                         {0.0, 0.0, 10.0, 10.0});
}

}  // namespace testutil
