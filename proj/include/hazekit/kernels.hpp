#pragma once

#include "hazekit/image.hpp"

namespace hazekit {

/// Per-pixel minimum over the three channels.
GrayMap min_channel(const RgbImage& img);

/// Per-pixel (r+g+b)/3.
GrayMap channel_mean(const RgbImage& img);

/// Sliding-window minimum. The window is the (2r+1)^2 square centered at the
/// pixel, intersected with the image; no padding values are invented.
GrayMap min_filter(const GrayMap& map, int radius);

/// Sliding-window mean over the window intersected with the image; border
/// windows normalize by their actual area. O(1) per pixel via summed-area table.
GrayMap box_mean_filter(const GrayMap& map, int radius);

/// Single-channel guided filter: per window a = cov(guide,input)/(var(guide)+eps),
/// b = mean(input) - a*mean(guide); output = mean_a*guide + mean_b, with all
/// means taken by box_mean_filter at the given radius.
GrayMap guided_filter(const GrayMap& guide, const GrayMap& input, const FilterParams& params);

}  // namespace hazekit
