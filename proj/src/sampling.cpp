#include "invset/sampling.hpp"

#include <array>
#include <random>
#include <stdexcept>
#include <string>

namespace invset {

namespace {

constexpr std::array<unsigned, 16> kPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

PointCloud uniform_random(const AxisBox& box, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("uniform_random: n must be >= 1");
  std::mt19937_64 rng(seed);
  const std::size_t d = box.dim();
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      // 53 random bits -> [0, 1)
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      coords[i * d + a] = box.lower()[a] + u * (box.upper()[a] - box.lower()[a]);
    }
  }
  return PointCloud(d, std::move(coords));
}

PointCloud grid(const AxisBox& box, const std::vector<std::size_t>& counts) {
  const std::size_t d = box.dim();
  if (counts.size() != d)
    throw std::invalid_argument("grid: need " + std::to_string(d) + " per-axis counts, got " +
                                std::to_string(counts.size()));
  std::size_t n = 1;
  for (std::size_t c : counts) {
    if (c < 1) throw std::invalid_argument("grid: every count must be >= 1");
    n *= c;
  }
  std::vector<double> coords(n * d);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double width = box.upper()[a] - box.lower()[a];
      coords[i * d + a] =
          box.lower()[a] + (static_cast<double>(idx[a]) + 0.5) * width / static_cast<double>(counts[a]);
    }
    for (std::size_t a = 0; a < d; ++a) {
      if (++idx[a] < counts[a]) break;
      idx[a] = 0;
    }
  }
  return PointCloud(d, std::move(coords));
}

double radical_inverse(std::uint64_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

PointCloud halton(const AxisBox& box, std::size_t n, std::size_t skip) {
  const std::size_t d = box.dim();
  if (n < 1) throw std::invalid_argument("halton: n must be >= 1");
  if (d > kPrimes.size()) throw std::invalid_argument("halton: dimension above 16 is not supported");
  std::vector<double> coords(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) {
      const double u = radical_inverse(skip + i + 1, kPrimes[a]);
      coords[i * d + a] = box.lower()[a] + u * (box.upper()[a] - box.lower()[a]);
    }
  }
  return PointCloud(d, std::move(coords));
}

}  // namespace invset
