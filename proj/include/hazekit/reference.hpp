#pragma once

#include <array>

#include "hazekit/image.hpp"

// Serial brute-force implementations of every windowed kernel, kept as the
// ground truth the parallel kernels are tested and benchmarked against.
// Nothing in the production pipeline may call into this namespace.
namespace hazekit::reference {

GrayMap min_channel(const RgbImage& img);
GrayMap channel_mean(const RgbImage& img);

/// O(N * w^2) window scan.
GrayMap min_filter(const GrayMap& map, int radius);

/// O(N * w^2) window sum divided by actual window area.
GrayMap box_mean_filter(const GrayMap& map, int radius);

/// Direct per-window least squares: a_k, b_k from raw sums over each window,
/// then q(x) = avg of a_k over windows containing x times guide(x) plus avg b_k.
GrayMap guided_filter(const GrayMap& guide, const GrayMap& input, int radius, double epsilon);

/// min_filter of min_channel, both brute force.
GrayMap dark_channel(const RgbImage& img, int radius);

/// Index of the direction with the largest dot product against v
/// (ties to the lowest index). Directions need not be normalized here;
/// callers pass unit vectors.
int nearest_direction(const std::array<double, 3>& v,
                      const std::vector<std::array<double, 3>>& directions);

}  // namespace hazekit::reference
