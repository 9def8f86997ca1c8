#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ebgls/instance.hpp"

namespace ebgls {

/// Raised on malformed or unsupported TSPLIB input.
struct TsplibError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses a TSPLIB-format symmetric instance. Supported EDGE_WEIGHT_TYPEs:
/// EUC_2D, CEIL_2D, ATT, GEO, EXPLICIT (FULL_MATRIX, UPPER_ROW, LOWER_ROW,
/// UPPER_DIAG_ROW, LOWER_DIAG_ROW).
Instance parse_tsplib(std::istream& in);
Instance load_tsplib_file(const std::filesystem::path& path);

/// Parses a TSPLIB .tour / .opt.tour file into a 0-based city order.
std::vector<std::int32_t> parse_tour(std::istream& in);
std::vector<std::int32_t> load_tour_file(const std::filesystem::path& path);

/// Writes a coordinate list as a TSPLIB EUC_2D instance. Byte-deterministic.
void write_tsplib_euc2d(std::ostream& out, const std::string& name,
                        const std::vector<double>& xs, const std::vector<double>& ys);

/// Best-known optimal costs, loaded from a `name value` text file.
class OptimumRegistry {
 public:
  OptimumRegistry() = default;
  static OptimumRegistry load(const std::filesystem::path& path);

  std::optional<std::int64_t> lookup(const std::string& instance_name) const;
  std::size_t size() const { return optima_.size(); }

 private:
  std::unordered_map<std::string, std::int64_t> optima_;
};

}  // namespace ebgls
