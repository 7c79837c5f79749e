#include "hazekit/dehaze.hpp"

#include <algorithm>
#include <cmath>

#include "hazekit/kernels.hpp"

namespace hazekit {

namespace {

// Global means are taken as per-row partial sums combined in row order, so
// the result does not depend on the thread count.
double mean_of(const GrayMap& m) {
    std::vector<double> row_sums(m.height, 0.0);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < m.height; ++y) {
        const double* row = &m.data[size_t(y) * m.width];
        double s = 0.0;
        for (int x = 0; x < m.width; ++x) s += row[x];
        row_sums[y] = s;
    }
    double total = 0.0;
    for (double s : row_sums) total += s;
    return total / double(m.pixel_count());
}

double mean_all_channels(const RgbImage& img) {
    std::vector<double> row_sums(img.height, 0.0);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y) {
        const double* row = &img.data[size_t(y) * img.width * 3];
        double s = 0.0;
        for (int i = 0; i < img.width * 3; ++i) s += row[i];
        row_sums[y] = s;
    }
    double total = 0.0;
    for (double s : row_sums) total += s;
    return total / double(img.pixel_count() * 3);
}

GrayMap resolve_field(const std::variant<double, GrayMap>& f, int w, int h, const char* name) {
    if (std::holds_alternative<double>(f)) {
        const double v = std::get<double>(f);
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
        return GrayMap(w, h, v);
    }
    const GrayMap& m = std::get<GrayMap>(f);
    if (m.width != w || m.height != h)
        throw std::invalid_argument(std::string(name) + ": dimension mismatch");
    for (double v : m.data)
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
    return m;
}

GrayMap k_map_from_intensity(const GrayMap& intensity, const GrayMap& gray_guide,
                             const DehazeParams& params) {
    const GrayMap averaged = box_mean_filter(intensity, params.avg_radius);
    GrayMap k = guided_filter(gray_guide, averaged, params.guided);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < k.height; ++y)
        for (int x = 0; x < k.width; ++x)
            k.at(x, y) = std::clamp(k.at(x, y), params.k_floor, 1.0);
    return k;
}

}  // namespace

void DehazeParams::validate() const {
    if (!(omega > 0.0 && omega < 1.0))
        throw std::invalid_argument("DehazeParams: omega must lie in (0, 1)");
    if (!(k_floor >= 0.5 && k_floor < 1.0))
        throw std::invalid_argument("DehazeParams: k_floor must lie in [0.5, 1)");
    if (!(t_floor > 0.0 && t_floor < 0.5))
        throw std::invalid_argument("DehazeParams: t_floor must lie in (0, 0.5)");
    if (patch_radius < 1) throw std::invalid_argument("DehazeParams: patch_radius must be >= 1");
    if (avg_radius < 1) throw std::invalid_argument("DehazeParams: avg_radius must be >= 1");
    guided.validate();
}

GrayOffset estimate_gray_offset(const RgbImage& img) {
    GrayOffset o;
    o.mu_i = mean_all_channels(img);
    o.mu_mc = mean_of(min_channel(img));
    o.alpha = o.mu_i - o.mu_mc;
    return o;
}

GrayMap haze_intensity(const RgbImage& img, const GrayOffset& offset) {
    GrayMap c = channel_mean(img);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < c.height; ++y)
        for (int x = 0; x < c.width; ++x) c.at(x, y) = clamp01(c.at(x, y) + offset.alpha);
    return c;
}

GrayMap estimate_k_map(const RgbImage& img, const DehazeParams& params) {
    params.validate();
    const GrayOffset offset = estimate_gray_offset(img);
    return k_map_from_intensity(haze_intensity(img, offset), channel_mean(img), params);
}

double transmission_normalizer(const RgbImage& img) {
    std::vector<double> row_sums(img.height, 0.0);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y) {
        const double* row = &img.data[size_t(y) * img.width * 3];
        double s = 0.0;
        for (int x = 0; x < img.width; ++x) {
            const double r = row[x * 3], g = row[x * 3 + 1], b = row[x * 3 + 2];
            s += (r + g + b) / 3.0 - std::min({r, g, b});
        }
        row_sums[y] = s;
    }
    double total = 0.0;
    for (double s : row_sums) total += s;
    return total / double(img.pixel_count());
}

GrayMap estimate_transmission(const RgbImage& img, const GrayMap& k_map,
                              const DehazeParams& params) {
    params.validate();
    require_same_size(img, k_map, "estimate_transmission");
    for (double v : k_map.data)
        if (!(v > 0.0))
            throw std::invalid_argument("estimate_transmission: k_map must be strictly positive");

    // Normalizer kept away from 1 so the denominator stays safely positive.
    const double beta_norm = std::clamp(transmission_normalizer(img), 0.0, 0.9);

    GrayMap ratio = min_channel(img);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < ratio.height; ++y)
        for (int x = 0; x < ratio.width; ++x) ratio.at(x, y) /= k_map.at(x, y);

    const GrayMap patched =
        params.patch_minimum ? min_filter(ratio, params.patch_radius) : std::move(ratio);

    GrayMap t(img.width, img.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < t.height; ++y)
        for (int x = 0; x < t.width; ++x) {
            const double raw = 1.0 - params.omega * patched.at(x, y);
            t.at(x, y) = std::clamp(raw / (1.0 - beta_norm), params.t_floor, 1.0);
        }
    return t;
}

RgbImage recover_radiance(const RgbImage& img, const GrayMap& t, const GrayMap& k,
                          double t_floor) {
    require_same_size(img, t, "recover_radiance");
    require_same_size(img, k, "recover_radiance");
    if (!(t_floor > 0.0)) throw std::invalid_argument("recover_radiance: t_floor must be > 0");
    RgbImage out(img.width, img.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const double tv = std::max(t.at(x, y), t_floor);
            const double air = k.at(x, y) * (1.0 - t.at(x, y));
            for (int c = 0; c < 3; ++c)
                out.at(x, y, c) = clamp01((img.at(x, y, c) - air) / tv);
        }
    return out;
}

RgbImage synthesize_haze(const RgbImage& clean, const HazeSynthesisParams& params) {
    const GrayMap t = resolve_field(params.transmission, clean.width, clean.height,
                                    "synthesize_haze: transmission");
    const GrayMap k =
        resolve_field(params.airlight_k, clean.width, clean.height, "synthesize_haze: airlight");
    RgbImage out(clean.width, clean.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < clean.height; ++y)
        for (int x = 0; x < clean.width; ++x) {
            const double tv = t.at(x, y);
            const double air = k.at(x, y) * (1.0 - tv);
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = clean.at(x, y, c) * tv + air;
        }
    return out;
}

DehazeResult dehaze_pipeline(const RgbImage& img, const DehazeParams& params) {
    params.validate();
    DehazeResult res;
    res.gray_offset = estimate_gray_offset(img);
    res.haze_intensity = haze_intensity(img, res.gray_offset);
    res.k_map = k_map_from_intensity(res.haze_intensity, channel_mean(img), params);
    res.normalizer = transmission_normalizer(img);
    res.transmission = estimate_transmission(img, res.k_map, params);
    res.radiance = recover_radiance(img, res.transmission, res.k_map, params.t_floor);
    return res;
}

double neglected_term_score(const RgbImage& clean, const GrayMap& t) {
    require_same_size(clean, t, "neglected_term_score");
    const GrayMap mc = min_channel(clean);
    std::vector<double> row_sums(clean.height, 0.0);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < clean.height; ++y) {
        double s = 0.0;
        for (int x = 0; x < clean.width; ++x) s += mc.at(x, y) * t.at(x, y);
        row_sums[y] = s;
    }
    double total = 0.0;
    for (double s : row_sums) total += s;
    return total / double(clean.pixel_count());
}

}  // namespace hazekit
