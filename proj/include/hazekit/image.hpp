#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hazekit {

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

/// H x W scalar field (dark channel, transmission, K-map, haze intensity).
/// Row-major, one double per pixel.
struct GrayMap {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    GrayMap() = default;
    GrayMap(int w, int h, double fill = 0.0) : width(w), height(h), data(size_t(w) * h, fill) {
        if (w < 1 || h < 1) throw std::invalid_argument("GrayMap: dimensions must be >= 1");
    }

    size_t pixel_count() const { return size_t(width) * height; }

    double& at(int x, int y) { return data[size_t(y) * width + x]; }
    double at(int x, int y) const { return data[size_t(y) * width + x]; }

    bool same_size(const GrayMap& o) const { return width == o.width && height == o.height; }
};

/// H x W x 3 image in normalized floats. Channels interleaved r,g,b per pixel.
/// All values live in [0,1]; 8-bit conversion happens only at I/O boundaries.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<double> data;  // 3 * width * height

    RgbImage() = default;
    RgbImage(int w, int h, double r = 0.0, double g = 0.0, double b = 0.0)
        : width(w), height(h), data(size_t(w) * h * 3) {
        if (w < 1 || h < 1) throw std::invalid_argument("RgbImage: dimensions must be >= 1");
        for (size_t i = 0; i < data.size(); i += 3) {
            data[i] = r;
            data[i + 1] = g;
            data[i + 2] = b;
        }
    }

    size_t pixel_count() const { return size_t(width) * height; }

    double& at(int x, int y, int c) { return data[(size_t(y) * width + x) * 3 + c]; }
    double at(int x, int y, int c) const { return data[(size_t(y) * width + x) * 3 + c]; }

    bool same_size(const RgbImage& o) const { return width == o.width && height == o.height; }
    bool same_size(const GrayMap& o) const { return width == o.width && height == o.height; }
};

/// Window half-width and regularizer for the windowed filters.
/// Window side = 2*radius + 1; epsilon applies to the guided filter only.
struct FilterParams {
    int radius = 30;
    double epsilon = 1e-3;

    void validate() const {
        if (radius < 1) throw std::invalid_argument("FilterParams: radius must be >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("FilterParams: epsilon must be > 0");
    }
};

inline GrayMap constant_map(int w, int h, double v) { return GrayMap(w, h, v); }

inline void require_same_size(const GrayMap& a, const GrayMap& b, const char* what) {
    if (!a.same_size(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline void require_same_size(const RgbImage& a, const GrayMap& b, const char* what) {
    if (!a.same_size(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline void require_same_size(const RgbImage& a, const RgbImage& b, const char* what) {
    if (!a.same_size(b)) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace hazekit
