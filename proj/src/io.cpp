#include "invset/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace invset {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t a = 0; a < cloud.dim(); ++a) out << (a ? ",x" : "x") << a;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t a = 0; a < p.size(); ++a) out << (a ? "," : "") << format_double(p[a]);
    out << '\n';
  }
}

void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_cloud_csv(out, cloud);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

PointCloud read_cloud_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(source + ": empty file");
  strip_cr(line);
  const auto header = split(line);
  for (std::size_t a = 0; a < header.size(); ++a)
    if (header[a] != "x" + std::to_string(a))
      throw std::runtime_error(source + ": header must be x0,x1,... but column " + std::to_string(a) + " is '" +
                               header[a] + "'");
  const std::size_t dim = header.size();
  std::vector<double> coords;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != dim)
      throw std::runtime_error(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                               " fields, got " + std::to_string(fields.size()));
    for (const auto& f : fields) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || ptr != f.data() + f.size())
        throw std::runtime_error(source + ":" + std::to_string(lineno) + ": bad number '" + f + "'");
      coords.push_back(v);
    }
  }
  try {
    return PointCloud(dim, std::move(coords));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
}

PointCloud read_cloud_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return read_cloud_csv(in, path.string());
}

}  // namespace invset
