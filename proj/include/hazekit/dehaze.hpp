#pragma once

#include <variant>

#include "hazekit/image.hpp"

namespace hazekit {

/// Pipeline configuration. Defaults follow the values the estimator was
/// tuned with: window side 9 for the transmission patch, K lower bound 0.8.
struct DehazeParams {
    double omega = 0.95;    // haze-retention factor
    int patch_radius = 4;   // transmission patch half-width (side 9)
    double k_floor = 0.8;   // lower bound K0 on the airlight-coefficient map
    double t_floor = 0.1;   // recovery lower bound on transmission
    FilterParams guided{30, 1e-3};
    int avg_radius = 15;    // haze-intensity averaging window half-width
    // The transmission formula's channel minimum can be taken per patch
    // (default) or per pixel; per pixel skips the window minimum entirely.
    bool patch_minimum = true;

    void validate() const;
};

/// Global gray offset: alpha = mean(image) - mean(min channel), both scalars.
struct GrayOffset {
    double alpha = 0.0;
    double mu_i = 0.0;
    double mu_mc = 0.0;
};

/// Forward haze model inputs. Transmission and airlight coefficient may each
/// be a constant or a per-pixel map; values must lie in (0, 1].
struct HazeSynthesisParams {
    std::variant<double, GrayMap> transmission = 1.0;
    std::variant<double, GrayMap> airlight_k = 1.0;
};

/// Full pipeline output: the recovered radiance plus every intermediate map.
/// For the kmap method k_map holds the estimated airlight-coefficient map;
/// the DCP baseline fills it with its broadcast airlight intensity.
struct DehazeResult {
    RgbImage radiance;
    GrayMap transmission;
    GrayMap k_map;
    GrayMap haze_intensity;
    GrayOffset gray_offset;
    double normalizer = 0.0;
};

GrayOffset estimate_gray_offset(const RgbImage& img);

/// C(x) = channel mean + alpha, clamped to [0,1].
GrayMap haze_intensity(const RgbImage& img, const GrayOffset& offset);

/// Airlight-coefficient map: box-averaged haze intensity, guided-filtered
/// against the gray image, then clamped to [k_floor, 1].
GrayMap estimate_k_map(const RgbImage& img, const DehazeParams& params);

/// Global mean of (channel mean - min channel); coincides with the gray
/// offset's alpha by linearity of the mean.
double transmission_normalizer(const RgbImage& img);

/// t(x) = (1 - omega * patch-min(min channel / K)) / (1 - normalizer),
/// clamped to [t_floor, 1]. Throws if k_map has non-positive values.
GrayMap estimate_transmission(const RgbImage& img, const GrayMap& k_map,
                              const DehazeParams& params);

/// Invert the degradation model: J = (I - K*(1-t)) / max(t, t_floor), clamped
/// to [0,1] per channel.
RgbImage recover_radiance(const RgbImage& img, const GrayMap& t, const GrayMap& k,
                          double t_floor);

/// Forward model: I = J*t + K*(1-t).
RgbImage synthesize_haze(const RgbImage& clean, const HazeSynthesisParams& params);

DehazeResult dehaze_pipeline(const RgbImage& img, const DehazeParams& params);

/// Global mean of min_channel(clean) * t, the magnitude of the term the
/// transmission derivation drops.
double neglected_term_score(const RgbImage& clean, const GrayMap& t);

}  // namespace hazekit
