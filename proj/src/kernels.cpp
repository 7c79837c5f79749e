#include "hazekit/kernels.hpp"

#include <algorithm>

// Every kernel here parallelizes over rows or columns only; each output
// element is computed by the same serial instruction sequence no matter how
// many threads run, so results are bit-identical across runs and thread counts.

namespace hazekit {

GrayMap min_channel(const RgbImage& img) {
    GrayMap out(img.width, img.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y) {
        const double* row = &img.data[size_t(y) * img.width * 3];
        double* orow = &out.data[size_t(y) * img.width];
        for (int x = 0; x < img.width; ++x) {
            const double* p = row + size_t(x) * 3;
            orow[x] = std::min({p[0], p[1], p[2]});
        }
    }
    return out;
}

GrayMap channel_mean(const RgbImage& img) {
    GrayMap out(img.width, img.height);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < img.height; ++y) {
        const double* row = &img.data[size_t(y) * img.width * 3];
        double* orow = &out.data[size_t(y) * img.width];
        for (int x = 0; x < img.width; ++x) {
            const double* p = row + size_t(x) * 3;
            orow[x] = (p[0] + p[1] + p[2]) / 3.0;
        }
    }
    return out;
}

GrayMap min_filter(const GrayMap& map, int radius) {
    if (radius < 1) throw std::invalid_argument("min_filter: radius must be >= 1");
    const int w = map.width, h = map.height;
    // Separable: horizontal window minimum, then vertical, windows clipped
    // to the image on both passes.
    GrayMap tmp(w, h), out(w, h);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y) {
        const double* in = &map.data[size_t(y) * w];
        double* t = &tmp.data[size_t(y) * w];
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
            double m = in[x0];
            for (int u = x0 + 1; u <= x1; ++u) m = std::min(m, in[u]);
            t[x] = m;
        }
    }
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
            const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
            double m = tmp.at(x, y0);
            for (int v = y0 + 1; v <= y1; ++v) m = std::min(m, tmp.at(x, v));
            out.at(x, y) = m;
        }
    }
    return out;
}

namespace {

// Summed-area table with a one-cell zero border: sat(x+1, y+1) holds the sum
// of map over [0..x] x [0..y]. Built in two fixed-order passes (row prefix
// sums, then column accumulation) so the summation order never depends on
// the thread count.
std::vector<double> summed_area_table(const GrayMap& map) {
    const int w = map.width, h = map.height;
    const size_t sw = size_t(w) + 1;
    std::vector<double> sat(sw * (h + 1), 0.0);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y) {
        const double* in = &map.data[size_t(y) * w];
        double* srow = &sat[(size_t(y) + 1) * sw];
        double run = 0.0;
        for (int x = 0; x < w; ++x) {
            run += in[x];
            srow[x + 1] = run;
        }
    }
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int x = 1; x <= w; ++x) {
        double run = 0.0;
        for (int y = 1; y <= h; ++y) {
            run += sat[size_t(y) * sw + x];
            sat[size_t(y) * sw + x] = run;
        }
    }
    return sat;
}

}  // namespace

GrayMap box_mean_filter(const GrayMap& map, int radius) {
    if (radius < 1) throw std::invalid_argument("box_mean_filter: radius must be >= 1");
    const int w = map.width, h = map.height;
    const size_t sw = size_t(w) + 1;
    const std::vector<double> sat = summed_area_table(map);
    GrayMap out(w, h);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
        const double* top = &sat[size_t(y0) * sw];
        const double* bot = &sat[(size_t(y1) + 1) * sw];
        double* orow = &out.data[size_t(y) * w];
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
            const double sum = bot[x1 + 1] - bot[x0] - top[x1 + 1] + top[x0];
            orow[x] = sum / (double(x1 - x0 + 1) * (y1 - y0 + 1));
        }
    }
    return out;
}

GrayMap guided_filter(const GrayMap& guide, const GrayMap& input, const FilterParams& params) {
    params.validate();
    require_same_size(guide, input, "guided_filter");
    const int w = guide.width, h = guide.height;
    const int r = params.radius;
    const double eps = params.epsilon;

    GrayMap gg(w, h), gp(w, h);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            gg.at(x, y) = guide.at(x, y) * guide.at(x, y);
            gp.at(x, y) = guide.at(x, y) * input.at(x, y);
        }

    const GrayMap mean_g = box_mean_filter(guide, r);
    const GrayMap mean_p = box_mean_filter(input, r);
    const GrayMap corr_gg = box_mean_filter(gg, r);
    const GrayMap corr_gp = box_mean_filter(gp, r);

    GrayMap a(w, h), b(w, h);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double var_g = corr_gg.at(x, y) - mean_g.at(x, y) * mean_g.at(x, y);
            const double cov_gp = corr_gp.at(x, y) - mean_g.at(x, y) * mean_p.at(x, y);
            a.at(x, y) = cov_gp / (var_g + eps);
            b.at(x, y) = mean_p.at(x, y) - a.at(x, y) * mean_g.at(x, y);
        }

    const GrayMap mean_a = box_mean_filter(a, r);
    const GrayMap mean_b = box_mean_filter(b, r);

    GrayMap out(w, h);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = mean_a.at(x, y) * guide.at(x, y) + mean_b.at(x, y);
    return out;
}

}  // namespace hazekit
