#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "invset/geometry.hpp"

namespace invset {

/// n i.i.d. uniform points in the box. The stream is fixed by the seed and
/// independent of the standard library's distribution implementations.
PointCloud uniform_random(const AxisBox& box, std::size_t n, std::uint64_t seed);

/// Cell centers of a tensor-product partition; the first axis varies fastest.
PointCloud grid(const AxisBox& box, const std::vector<std::size_t>& counts);

/// Halton points with indices skip+1 .. skip+n, bases = first d primes (d <= 16).
PointCloud halton(const AxisBox& box, std::size_t n, std::size_t skip = 0);

/// Radical inverse of index in the given base.
double radical_inverse(std::uint64_t index, unsigned base);

}  // namespace invset
