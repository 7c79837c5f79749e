#pragma once

#include <array>

#include "hazekit/dehaze.hpp"
#include "hazekit/image.hpp"

namespace hazekit {

/// Global airlight color A, components in (0, 1].
struct Airlight {
    std::array<double, 3> rgb{1.0, 1.0, 1.0};
};

struct DcpParams {
    int patch_radius = 4;
    double omega = 0.95;
    double t_floor = 0.1;
    double top_fraction = 0.001;  // dark-channel fraction used for airlight selection
    FilterParams guided{30, 1e-3};

    void validate() const;
};

/// Patch-and-channel minimum: min_filter(min_channel(img), patch_radius).
GrayMap dark_channel(const RgbImage& img, int patch_radius);

/// Among the ceil(top_fraction * N) brightest dark-channel pixels (extended
/// across ties at the cutoff value), the image pixel with the greatest channel
/// sum; ties go to the lowest row-major index.
Airlight estimate_airlight_dcp(const RgbImage& img, const GrayMap& dark, double top_fraction);

/// t = 1 - omega * patch-min over channels of I_c / A_c, guided-filtered
/// against the gray image and clamped to [t_floor, 1].
GrayMap dcp_transmission(const RgbImage& img, const Airlight& a, const DcpParams& params);

/// Same as dcp_transmission without the guided refinement and final clamp.
GrayMap dcp_raw_transmission(const RgbImage& img, const Airlight& a, const DcpParams& params);

/// Per-channel recovery against the global airlight:
/// J_c = (I_c - A_c * (1 - t)) / max(t, t_floor), clamped to [0,1].
RgbImage recover_radiance_airlight(const RgbImage& img, const GrayMap& t, const Airlight& a,
                                   double t_floor);

/// Full baseline: dark channel, airlight, transmission, recovery. The result's
/// k_map holds the broadcast airlight intensity (mean of A's channels).
DehazeResult dcp_dehaze(const RgbImage& img, const DcpParams& params);

}  // namespace hazekit
