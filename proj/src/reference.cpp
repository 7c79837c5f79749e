#include "hazekit/reference.hpp"

#include <algorithm>

namespace hazekit::reference {

GrayMap min_channel(const RgbImage& img) {
    GrayMap out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = std::min({img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)});
    return out;
}

GrayMap channel_mean(const RgbImage& img) {
    GrayMap out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            out.at(x, y) = (img.at(x, y, 0) + img.at(x, y, 1) + img.at(x, y, 2)) / 3.0;
    return out;
}

GrayMap min_filter(const GrayMap& map, int radius) {
    GrayMap out(map.width, map.height);
    for (int y = 0; y < map.height; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(map.height - 1, y + radius);
        for (int x = 0; x < map.width; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(map.width - 1, x + radius);
            double m = map.at(x0, y0);
            for (int v = y0; v <= y1; ++v)
                for (int u = x0; u <= x1; ++u) m = std::min(m, map.at(u, v));
            out.at(x, y) = m;
        }
    }
    return out;
}

GrayMap box_mean_filter(const GrayMap& map, int radius) {
    GrayMap out(map.width, map.height);
    for (int y = 0; y < map.height; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(map.height - 1, y + radius);
        for (int x = 0; x < map.width; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(map.width - 1, x + radius);
            double sum = 0.0;
            for (int v = y0; v <= y1; ++v)
                for (int u = x0; u <= x1; ++u) sum += map.at(u, v);
            out.at(x, y) = sum / (double(x1 - x0 + 1) * (y1 - y0 + 1));
        }
    }
    return out;
}

GrayMap guided_filter(const GrayMap& guide, const GrayMap& input, int radius, double epsilon) {
    const int w = guide.width, h = guide.height;
    GrayMap a(w, h), b(w, h), out(w, h);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
            double si = 0.0, sp = 0.0, sii = 0.0, sip = 0.0;
            const double n = double(x1 - x0 + 1) * (y1 - y0 + 1);
            for (int v = y0; v <= y1; ++v)
                for (int u = x0; u <= x1; ++u) {
                    const double gi = guide.at(u, v), pi = input.at(u, v);
                    si += gi;
                    sp += pi;
                    sii += gi * gi;
                    sip += gi * pi;
                }
            const double mean_i = si / n, mean_p = sp / n;
            const double var_i = sii / n - mean_i * mean_i;
            const double cov_ip = sip / n - mean_i * mean_p;
            a.at(x, y) = cov_ip / (var_i + epsilon);
            b.at(x, y) = mean_p - a.at(x, y) * mean_i;
        }
    }
    // x is inside window(k) exactly when k is inside window(x), so the
    // overlapping-window average is a box mean of a and b.
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
            double sa = 0.0, sb = 0.0;
            for (int v = y0; v <= y1; ++v)
                for (int u = x0; u <= x1; ++u) {
                    sa += a.at(u, v);
                    sb += b.at(u, v);
                }
            const double n = double(x1 - x0 + 1) * (y1 - y0 + 1);
            out.at(x, y) = (sa / n) * guide.at(x, y) + sb / n;
        }
    }
    return out;
}

GrayMap dark_channel(const RgbImage& img, int radius) {
    return min_filter(min_channel(img), radius);
}

int nearest_direction(const std::array<double, 3>& v,
                      const std::vector<std::array<double, 3>>& directions) {
    int best = 0;
    double best_dot = directions[0][0] * v[0] + directions[0][1] * v[1] + directions[0][2] * v[2];
    for (int i = 1; i < int(directions.size()); ++i) {
        const double d =
            directions[i][0] * v[0] + directions[i][1] * v[1] + directions[i][2] * v[2];
        if (d > best_dot) {
            best_dot = d;
            best = i;
        }
    }
    return best;
}

}  // namespace hazekit::reference
