#pragma once
//
// CSV output. Numbers use the shortest text that reads back bit-exactly.
//
//   profile:     x,A,Au,u,p,alpha       (one row per cell)
//   probe:       t,A,Au,u,p,alpha       (one row per recorded step)
//   space-time:  t,x,A,Au,u,p,alpha
//
// Every file gets a "<name>.meta" sidecar with key = value lines.
//

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hemo1d/error.hpp"

namespace hemo {

class IoError : public Error {
 public:
  using Error::Error;
};

/// Environment variable that overrides every output directory.
inline constexpr const char* kOutDirEnv = "HEMO1D_OUT_DIR";

inline std::filesystem::path output_dir(const std::string& fallback) {
  if (const char* e = std::getenv(kOutDirEnv); e && *e) return e;
  return fallback;
}

inline void make_parent_dirs(const std::filesystem::path& path) {
  if (!path.has_parent_path()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
}

inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("format_double failed");
  return std::string(buf, ptr);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw IoError("no column '" + name + "'");
  }
  std::vector<double> values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r[c]);
    return out;
  }
};

inline void write_csv(const std::filesystem::path& path, const Table& t) {
  make_parent_dirs(path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
  out << '\n';
  for (const auto& r : t.rows) {
    if (r.size() != t.header.size()) throw IoError("row width does not match header");
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

inline Table read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty csv " + path.string());
  {
    std::stringstream ss(line);
    std::string h;
    while (std::getline(ss, h, ',')) t.header.push_back(h);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, v);
      if (ec != std::errc() || ptr != line.data() + end)
        throw IoError("bad number in " + path.string());
      row.push_back(v);
      pos = end + 1;
    }
    if (row.size() != t.header.size()) throw IoError("ragged row in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

using Metadata = std::map<std::string, std::string>;

inline std::filesystem::path meta_path(const std::filesystem::path& csv) {
  auto p = csv;
  p += ".meta";
  return p;
}

inline void write_metadata(const std::filesystem::path& csv, const Metadata& m) {
  const auto path = meta_path(csv);
  make_parent_dirs(path);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& [k, v] : m) {
    if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos)
      throw IoError("metadata entries must be single-line: " + k);
    out << k << " = " << v << '\n';
  }
}

inline Metadata read_metadata(const std::filesystem::path& csv) {
  std::ifstream in(meta_path(csv));
  if (!in) throw IoError("cannot read " + meta_path(csv).string());
  Metadata m;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    m[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return m;
}

}  // namespace hemo
