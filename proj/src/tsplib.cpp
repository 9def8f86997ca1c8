#include "ebgls/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace ebgls {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits "KEY : value" / "KEY: value" / bare section keywords.
bool split_keyword(const std::string& line, std::string& key, std::string& value) {
  const std::size_t colon = line.find(':');
  if (colon == std::string::npos) {
    key = trim(line);
    value.clear();
    return !key.empty();
  }
  key = trim(line.substr(0, colon));
  value = trim(line.substr(colon + 1));
  return !key.empty();
}

std::vector<std::int32_t> read_explicit_matrix(std::istream& in, int n, const std::string& fmt) {
  const std::size_t un = static_cast<std::size_t>(n);
  std::vector<std::int32_t> m(un * un, 0);
  const auto set = [&](int a, int b, std::int64_t v) {
    m[static_cast<std::size_t>(a) * un + static_cast<std::size_t>(b)] =
        static_cast<std::int32_t>(v);
    m[static_cast<std::size_t>(b) * un + static_cast<std::size_t>(a)] =
        static_cast<std::int32_t>(v);
  };
  const auto next = [&]() {
    std::int64_t v;
    if (!(in >> v)) throw TsplibError("EDGE_WEIGHT_SECTION: not enough entries");
    return v;
  };
  if (fmt == "FULL_MATRIX") {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const std::int64_t v = next();
        if (a < b) set(a, b, v);
      }
  } else if (fmt == "UPPER_ROW") {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) set(a, b, next());
  } else if (fmt == "LOWER_ROW") {
    for (int a = 1; a < n; ++a)
      for (int b = 0; b < a; ++b) set(a, b, next());
  } else if (fmt == "UPPER_DIAG_ROW") {
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        const std::int64_t v = next();
        if (a != b) set(a, b, v);
      }
  } else if (fmt == "LOWER_DIAG_ROW") {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b <= a; ++b) {
        const std::int64_t v = next();
        if (a != b) set(a, b, v);
      }
  } else {
    throw TsplibError("unsupported EDGE_WEIGHT_FORMAT: " + fmt);
  }
  return m;
}

}  // namespace

Instance parse_tsplib(std::istream& in) {
  std::string name = "unnamed";
  int dimension = -1;
  std::string weight_type;
  std::string weight_format = "FULL_MATRIX";
  std::vector<double> xs, ys;
  std::vector<std::int32_t> matrix;
  bool have_coords = false;
  bool have_matrix = false;

  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    if (!split_keyword(line, key, value)) continue;

    if (key == "NAME") {
      name = value;
      // Some files carry the extension in the NAME field.
      const std::size_t dot = name.find(".tsp");
      if (dot != std::string::npos) name = name.substr(0, dot);
    } else if (key == "TYPE") {
      if (value != "TSP")
        throw TsplibError("unsupported TYPE: " + value + " (only symmetric TSP)");
    } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE" || key == "NODE_COORD_TYPE") {
      // informational
    } else if (key == "DIMENSION") {
      dimension = std::stoi(value);
      if (dimension < 3) throw TsplibError("DIMENSION must be at least 3");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = value;
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      weight_format = value;
    } else if (key == "NODE_COORD_SECTION") {
      if (dimension < 0) throw TsplibError("NODE_COORD_SECTION before DIMENSION");
      xs.assign(static_cast<std::size_t>(dimension), 0.0);
      ys.assign(static_cast<std::size_t>(dimension), 0.0);
      std::vector<bool> seen(static_cast<std::size_t>(dimension), false);
      for (int i = 0; i < dimension; ++i) {
        int id;
        double x, y;
        if (!(in >> id >> x >> y))
          throw TsplibError("NODE_COORD_SECTION: expected " + std::to_string(dimension) +
                            " coordinate lines");
        if (id < 1 || id > dimension) throw TsplibError("NODE_COORD_SECTION: city id out of range");
        if (seen[static_cast<std::size_t>(id - 1)])
          throw TsplibError("NODE_COORD_SECTION: duplicate city id");
        seen[static_cast<std::size_t>(id - 1)] = true;
        xs[static_cast<std::size_t>(id - 1)] = x;
        ys[static_cast<std::size_t>(id - 1)] = y;
      }
      have_coords = true;
    } else if (key == "EDGE_WEIGHT_SECTION") {
      if (dimension < 0) throw TsplibError("EDGE_WEIGHT_SECTION before DIMENSION");
      matrix = read_explicit_matrix(in, dimension, weight_format);
      have_matrix = true;
    } else if (key == "DISPLAY_DATA_SECTION") {
      if (dimension < 0) throw TsplibError("DISPLAY_DATA_SECTION before DIMENSION");
      for (int i = 0; i < dimension; ++i) {
        int id;
        double x, y;
        if (!(in >> id >> x >> y)) throw TsplibError("DISPLAY_DATA_SECTION: malformed");
      }
    } else if (key == "FIXED_EDGES_SECTION") {
      throw TsplibError("FIXED_EDGES_SECTION is not supported");
    } else if (key == "EOF") {
      break;
    } else {
      throw TsplibError("unrecognized keyword: " + key);
    }
  }

  if (dimension < 0) throw TsplibError("missing DIMENSION");
  if (weight_type == "EUC_2D" || weight_type == "CEIL_2D" || weight_type == "ATT" ||
      weight_type == "GEO") {
    if (!have_coords) throw TsplibError("missing NODE_COORD_SECTION");
    const WeightRule rule = weight_type == "EUC_2D"    ? WeightRule::kEuc2d
                            : weight_type == "CEIL_2D" ? WeightRule::kCeil2d
                            : weight_type == "ATT"     ? WeightRule::kAtt
                                                       : WeightRule::kGeo;
    return Instance(name, rule, std::move(xs), std::move(ys));
  }
  if (weight_type == "EXPLICIT") {
    if (!have_matrix) throw TsplibError("missing EDGE_WEIGHT_SECTION");
    return Instance(name, dimension, std::move(matrix));
  }
  throw TsplibError("unsupported EDGE_WEIGHT_TYPE: " +
                    (weight_type.empty() ? std::string("<missing>") : weight_type));
}

Instance load_tsplib_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TsplibError("cannot open instance file: " + path.string());
  return parse_tsplib(in);
}

std::vector<std::int32_t> parse_tour(std::istream& in) {
  int dimension = -1;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    if (!split_keyword(line, key, value)) continue;
    if (key == "DIMENSION") {
      dimension = std::stoi(value);
    } else if (key == "TOUR_SECTION") {
      std::vector<std::int32_t> order;
      if (dimension > 0) order.reserve(static_cast<std::size_t>(dimension));
      std::int64_t v;
      while (in >> v) {
        if (v == -1) break;
        order.push_back(static_cast<std::int32_t>(v - 1));
      }
      if (dimension > 0 && static_cast<int>(order.size()) != dimension)
        throw TsplibError("TOUR_SECTION: length does not match DIMENSION");
      return order;
    } else if (key == "EOF") {
      break;
    }
    // NAME/TYPE/COMMENT ignored
  }
  throw TsplibError("missing TOUR_SECTION");
}

std::vector<std::int32_t> load_tour_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TsplibError("cannot open tour file: " + path.string());
  return parse_tour(in);
}

void write_tsplib_euc2d(std::ostream& out, const std::string& name,
                        const std::vector<double>& xs, const std::vector<double>& ys) {
  out << "NAME : " << name << "\n";
  out << "COMMENT : uniform random instance\n";
  out << "TYPE : TSP\n";
  out << "DIMENSION : " << xs.size() << "\n";
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  std::ostringstream fmt;
  fmt << std::fixed << std::setprecision(4);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    fmt.str("");
    fmt << (i + 1) << " " << xs[i] << " " << ys[i] << "\n";
    out << fmt.str();
  }
  out << "EOF\n";
}

OptimumRegistry OptimumRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TsplibError("cannot open optimum registry: " + path.string());
  OptimumRegistry reg;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    std::int64_t value;
    if (ls >> name >> value) reg.optima_[name] = value;
  }
  return reg;
}

std::optional<std::int64_t> OptimumRegistry::lookup(const std::string& instance_name) const {
  const auto it = optima_.find(instance_name);
  if (it == optima_.end()) return std::nullopt;
  return it->second;
}

}  // namespace ebgls
