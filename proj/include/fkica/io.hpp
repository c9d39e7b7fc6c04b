#pragma once

// Plain-text input and output: curve and label CSV files, key-value configs
// and content digests.

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fkica/errors.hpp"
#include "fkica/specmat.hpp"

namespace fkica {

inline std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto z = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, z - a + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Strict number parse: the whole token must be consumed.
inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

inline bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stoll(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

/// "key = value" lines; '#' starts a comment. Duplicate keys are an error.
inline std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw Error(ErrorKind::InvalidConfig, "duplicate key '" + key + "'");
    kv[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return kv;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Sampled curves: `grid` has m points, `values` is n×m (one curve per row).
struct CurveTable {
  std::vector<double> grid;
  Matrix values;
};

/// Column layout: the first column holds the grid, every further column one
/// curve. A first line that does not parse as numbers is a header.
inline CurveTable parse_curves_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    std::vector<double> row;
    bool numeric = true;
    for (const auto& c : cells) {
      double v = 0.0;
      if (!parse_double(c, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (rows.empty() && lineno == 1) continue;
      throw Error(ErrorKind::InvalidConfig, "curves line " + std::to_string(lineno) + " is not numeric");
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorKind::InvalidConfig, "curves line " + std::to_string(lineno) + " has a different width");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().size() < 2) {
    throw Error(ErrorKind::InvalidConfig, "curves file needs a grid column and at least one curve");
  }
  CurveTable t;
  const auto m = static_cast<Eigen::Index>(rows.size());
  const auto n = static_cast<Eigen::Index>(rows.front().size() - 1);
  t.values.resize(n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& r = rows[static_cast<std::size_t>(k)];
    t.grid.push_back(r[0]);
    for (Eigen::Index i = 0; i < n; ++i) t.values(i, k) = r[static_cast<std::size_t>(i + 1)];
  }
  return t;
}

inline CurveTable read_curves_csv(const std::string& path) {
  std::istringstream ss(read_file(path));
  return parse_curves_csv(ss);
}

inline void write_curves_csv(std::ostream& os, const std::vector<double>& grid, const Matrix& values) {
  os << "t";
  for (Eigen::Index i = 0; i < values.rows(); ++i) os << ",curve" << i;
  os << '\n';
  const auto old = os.precision(17);
  for (Eigen::Index k = 0; k < values.cols(); ++k) {
    os << grid[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < values.rows(); ++i) os << ',' << values(i, k);
    os << '\n';
  }
  os.precision(old);
}

/// "curve_id,label" rows (header optional); rows may come in any order but
/// ids must cover 0..n-1 exactly once.
inline std::vector<int> parse_labels_csv(std::istream& is) {
  std::map<long long, int> by_id;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    long long id = 0, label = 0;
    if (cells.size() != 2 || !parse_int(cells[0], id) || !parse_int(cells[1], label)) {
      if (lineno == 1) continue;
      throw Error(ErrorKind::InvalidConfig, "labels line " + std::to_string(lineno) + " is malformed");
    }
    if (label != 0 && label != 1) throw Error(ErrorKind::InvalidConfig, "labels must be 0 or 1");
    if (!by_id.emplace(id, static_cast<int>(label)).second) {
      throw Error(ErrorKind::InvalidConfig, "duplicate curve id " + std::to_string(id));
    }
  }
  std::vector<int> out;
  long long expect = 0;
  for (const auto& [id, label] : by_id) {
    if (id != expect++) throw Error(ErrorKind::InvalidConfig, "curve ids must be 0..n-1");
    out.push_back(label);
  }
  return out;
}

inline std::vector<int> read_labels_csv(const std::string& path) {
  std::istringstream ss(read_file(path));
  return parse_labels_csv(ss);
}

inline void write_labels_csv(std::ostream& os, const std::vector<int>& labels) {
  os << "curve_id,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) os << i << ',' << labels[i] << '\n';
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream ss;
  ss << std::hex;
  ss.width(16);
  ss.fill('0');
  ss << v;
  return ss.str();
}

}  // namespace fkica
