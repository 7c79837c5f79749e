#include "hazekit/dcp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hazekit/kernels.hpp"

namespace hazekit {

void DcpParams::validate() const {
    if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("DcpParams: omega must lie in (0, 1)");
    if (!(t_floor > 0.0 && t_floor < 0.5))
        throw std::invalid_argument("DcpParams: t_floor must lie in (0, 0.5)");
    if (patch_radius < 1) throw std::invalid_argument("DcpParams: patch_radius must be >= 1");
    if (!(top_fraction > 0.0 && top_fraction <= 0.05))
        throw std::invalid_argument("DcpParams: top_fraction must lie in (0, 0.05]");
    guided.validate();
}

GrayMap dark_channel(const RgbImage& img, int patch_radius) {
    return min_filter(min_channel(img), patch_radius);
}

Airlight estimate_airlight_dcp(const RgbImage& img, const GrayMap& dark, double top_fraction) {
    require_same_size(img, dark, "estimate_airlight_dcp");
    if (!(top_fraction > 0.0 && top_fraction <= 0.05))
        throw std::invalid_argument("estimate_airlight_dcp: top_fraction must lie in (0, 0.05]");
    const size_t n = dark.pixel_count();
    const size_t k = std::min(n, size_t(std::ceil(top_fraction * double(n))));

    // Candidates are every pixel at or above the k-th largest dark value.
    // Extending across ties keeps the selected intensity independent of pixel
    // order (the dark channel is full of exact ties from min-filter plateaus).
    std::vector<double> values(dark.data);
    std::nth_element(values.begin(), values.begin() + (k - 1), values.end(),
                     std::greater<double>());
    const double cutoff = values[k - 1];

    size_t best = 0;
    double best_sum = -1.0;
    for (size_t p = 0; p < n; ++p) {
        if (dark.data[p] < cutoff) continue;
        const double sum = img.data[p * 3] + img.data[p * 3 + 1] + img.data[p * 3 + 2];
        if (sum > best_sum) {
            best_sum = sum;
            best = p;
        }
    }
    Airlight a;
    // Components floored at the smallest nonzero 8-bit level so downstream
    // per-channel divisions stay finite.
    for (int c = 0; c < 3; ++c) a.rgb[c] = std::max(img.data[best * 3 + c], 1.0 / 255.0);
    return a;
}

namespace {

GrayMap channel_ratio_min(const RgbImage& img, const Airlight& a) {
    GrayMap out(img.width, img.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = std::min({img.at(x, y, 0) / a.rgb[0], img.at(x, y, 1) / a.rgb[1],
                                     img.at(x, y, 2) / a.rgb[2]});
    return out;
}

}  // namespace

GrayMap dcp_raw_transmission(const RgbImage& img, const Airlight& a, const DcpParams& params) {
    params.validate();
    for (double c : a.rgb)
        if (!(c > 0.0))
            throw std::invalid_argument("dcp_raw_transmission: airlight must be positive");
    GrayMap t = min_filter(channel_ratio_min(img, a), params.patch_radius);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) t.at(x, y) = 1.0 - params.omega * t.at(x, y);
    return t;
}

GrayMap dcp_transmission(const RgbImage& img, const Airlight& a, const DcpParams& params) {
    GrayMap t = guided_filter(channel_mean(img), dcp_raw_transmission(img, a, params),
                              params.guided);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x)
            t.at(x, y) = std::clamp(t.at(x, y), params.t_floor, 1.0);
    return t;
}

RgbImage recover_radiance_airlight(const RgbImage& img, const GrayMap& t, const Airlight& a,
                                   double t_floor) {
    require_same_size(img, t, "recover_radiance_airlight");
    if (!(t_floor > 0.0))
        throw std::invalid_argument("recover_radiance_airlight: t_floor must be > 0");
    RgbImage out(img.width, img.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double tv = std::max(t.at(x, y), t_floor);
            for (int c = 0; c < 3; ++c)
                out.at(x, y, c) =
                    clamp01((img.at(x, y, c) - a.rgb[c] * (1.0 - t.at(x, y))) / tv);
        }
    return out;
}

DehazeResult dcp_dehaze(const RgbImage& img, const DcpParams& params) {
    params.validate();
    const GrayMap dark = dark_channel(img, params.patch_radius);
    const Airlight a = estimate_airlight_dcp(img, dark, params.top_fraction);

    DehazeResult res;
    res.transmission = dcp_transmission(img, a, params);
    res.radiance = recover_radiance_airlight(img, res.transmission, a, params.t_floor);
    res.k_map = GrayMap(img.width, img.height, (a.rgb[0] + a.rgb[1] + a.rgb[2]) / 3.0);
    res.gray_offset = estimate_gray_offset(img);
    res.haze_intensity = haze_intensity(img, res.gray_offset);
    res.normalizer = transmission_normalizer(img);
    return res;
}

}  // namespace hazekit
