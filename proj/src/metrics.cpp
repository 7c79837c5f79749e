#include "hazekit/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hazekit/kernels.hpp"

namespace hazekit {

namespace {

constexpr double kGradRatioEps = 1e-6;  // guards the hazy gradient in log ratios
constexpr double kNullClusterRadius = 1e-9;

inline int clamp_idx(int v, int hi) { return std::clamp(v, 0, hi); }

inline double magnitude_from(const RgbImage& img, size_t p, const Airlight& a) {
    const double dx = img.data[p * 3] - a.rgb[0];
    const double dy = img.data[p * 3 + 1] - a.rgb[1];
    const double dz = img.data[p * 3 + 2] - a.rgb[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline bool saturated_8bit(const RgbImage& img, size_t p) {
    for (int c = 0; c < 3; ++c) {
        const long q = std::lround(clamp01(img.data[p * 3 + c]) * 255.0);
        if (q == 0 || q == 255) return true;
    }
    return false;
}

}  // namespace

void MetricParams::validate() const {
    if (!(edge_threshold > 0.0))
        throw std::invalid_argument("MetricParams: edge_threshold must be > 0");
    if (dc_patch_radius < 1)
        throw std::invalid_argument("MetricParams: dc_patch_radius must be >= 1");
    if (n_directions < 2) throw std::invalid_argument("MetricParams: n_directions must be >= 2");
    if (min_cluster < 2) throw std::invalid_argument("MetricParams: min_cluster must be >= 2");
    if (!(top_fraction > 0.0 && top_fraction <= 0.05))
        throw std::invalid_argument("MetricParams: top_fraction must lie in (0, 0.05]");
}

size_t EdgeMask::visible_count() const {
    size_t n = 0;
    for (std::uint8_t v : visible) n += v;
    return n;
}

EdgeMask visible_edges(const RgbImage& img, double contrast_threshold) {
    if (!(contrast_threshold > 0.0))
        throw std::invalid_argument("visible_edges: threshold must be > 0");
    const int w = img.width, h = img.height;
    const GrayMap lum = channel_mean(img);

    EdgeMask mask;
    mask.width = w;
    mask.height = h;
    mask.gradient = GrayMap(w, h);
    mask.visible.assign(size_t(w) * h, 0);

#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double gx =
                (lum.at(clamp_idx(x + 1, w - 1), y) - lum.at(clamp_idx(x - 1, w - 1), y)) / 2.0;
            const double gy =
                (lum.at(x, clamp_idx(y + 1, h - 1)) - lum.at(x, clamp_idx(y - 1, h - 1))) / 2.0;
            mask.gradient.at(x, y) = std::sqrt(gx * gx + gy * gy);
        }

#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - 2), y1 = std::min(h - 1, y + 2);
        for (int x = 0; x < w; ++x) {
            if (!(mask.gradient.at(x, y) > contrast_threshold)) continue;
            const int x0 = std::max(0, x - 2), x1 = std::min(w - 1, x + 2);
            double mn = lum.at(x0, y0), mx = mn;
            for (int v = y0; v <= y1; ++v)
                for (int u = x0; u <= x1; ++u) {
                    const double l = lum.at(u, v);
                    mn = std::min(mn, l);
                    mx = std::max(mx, l);
                }
            const double denom = mx + mn;
            const double michelson = denom > 0.0 ? (mx - mn) / denom : 0.0;
            if (michelson > contrast_threshold) mask.visible[size_t(y) * w + x] = 1;
        }
    }
    return mask;
}

std::optional<double> metric_e(const EdgeMask& hazy, const EdgeMask& dehazed) {
    const double n_o = double(hazy.visible_count());
    if (n_o == 0.0) return std::nullopt;
    const double n_r = double(dehazed.visible_count());
    return (n_r - n_o) / n_o;
}

std::optional<double> metric_e(const RgbImage& hazy, const RgbImage& dehazed,
                               double edge_threshold) {
    require_same_size(hazy, dehazed, "metric_e");
    return metric_e(visible_edges(hazy, edge_threshold), visible_edges(dehazed, edge_threshold));
}

std::optional<double> metric_rbar(const EdgeMask& hazy, const EdgeMask& dehazed) {
    // Fixed row order keeps the log-sum reduction deterministic.
    double log_sum = 0.0;
    size_t n = 0;
    for (int y = 0; y < dehazed.height; ++y)
        for (int x = 0; x < dehazed.width; ++x) {
            if (!dehazed.visible[size_t(y) * dehazed.width + x]) continue;
            const double gd = dehazed.gradient.at(x, y);
            const double gh = std::max(hazy.gradient.at(x, y), kGradRatioEps);
            log_sum += std::log(gd / gh);
            ++n;
        }
    if (n == 0) return std::nullopt;
    return std::exp(log_sum / double(n));
}

std::optional<double> metric_rbar(const RgbImage& hazy, const RgbImage& dehazed,
                                  double edge_threshold) {
    require_same_size(hazy, dehazed, "metric_rbar");
    return metric_rbar(visible_edges(hazy, edge_threshold),
                       visible_edges(dehazed, edge_threshold));
}

double metric_sigma(const RgbImage& hazy, const RgbImage& dehazed) {
    require_same_size(hazy, dehazed, "metric_sigma");
    size_t newly = 0;
    for (size_t p = 0; p < hazy.pixel_count(); ++p)
        if (saturated_8bit(dehazed, p) && !saturated_8bit(hazy, p)) ++newly;
    return 100.0 * double(newly) / double(hazy.pixel_count());
}

double metric_alpha_dc(const RgbImage& hazy, const RgbImage& dehazed, int patch_radius) {
    require_same_size(hazy, dehazed, "metric_alpha_dc");
    const GrayMap d = dark_channel(hazy, patch_radius);
    const GrayMap dh = dark_channel(dehazed, patch_radius);
    std::vector<double> row_sums(d.height, 0.0);
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < d.height; ++y) {
        double s = 0.0;
        for (int x = 0; x < d.width; ++x) {
            const double diff = d.at(x, y) - dh.at(x, y);
            s += diff * diff;
        }
        row_sums[y] = s;
    }
    double total = 0.0;
    for (double s : row_sums) total += s;
    return total / double(d.pixel_count());
}

std::vector<std::array<double, 3>> sphere_directions(int n) {
    if (n < 2) throw std::invalid_argument("sphere_directions: n must be >= 2");
    const double pi = std::acos(-1.0);
    const double golden_angle = pi * (3.0 - std::sqrt(5.0));
    std::vector<std::array<double, 3>> dirs(n);
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / double(n);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double az = golden_angle * double(i);
        dirs[i] = {r * std::cos(az), r * std::sin(az), z};
    }
    return dirs;
}

HazeLineClustering cluster_haze_lines(const RgbImage& hazy, const Airlight& a,
                                      std::vector<std::array<double, 3>> directions,
                                      int min_cluster) {
    if (directions.size() < 2)
        throw std::invalid_argument("cluster_haze_lines: need at least 2 directions");
    if (min_cluster < 2)
        throw std::invalid_argument("cluster_haze_lines: min_cluster must be >= 2");
    HazeLineClustering cl;
    cl.directions = std::move(directions);
    cl.min_cluster = min_cluster;
    cl.assignment.assign(hazy.pixel_count(), -1);
    cl.counts.assign(cl.directions.size(), 0);

    const int n_dirs = int(cl.directions.size());
#ifdef _OPENMP
#pragma omp parallel for
#endif
    for (int y = 0; y < hazy.height; ++y)
        for (int x = 0; x < hazy.width; ++x) {
            const size_t p = size_t(y) * hazy.width + x;
            const double dx = hazy.data[p * 3] - a.rgb[0];
            const double dy = hazy.data[p * 3 + 1] - a.rgb[1];
            const double dz = hazy.data[p * 3 + 2] - a.rgb[2];
            if (dx * dx + dy * dy + dz * dz < kNullClusterRadius * kNullClusterRadius) continue;
            // Nearest by angle == largest dot product against the unit centers;
            // ties go to the lowest index.
            int best = 0;
            double best_dot =
                cl.directions[0][0] * dx + cl.directions[0][1] * dy + cl.directions[0][2] * dz;
            for (int i = 1; i < n_dirs; ++i) {
                const double d = cl.directions[i][0] * dx + cl.directions[i][1] * dy +
                                 cl.directions[i][2] * dz;
                if (d > best_dot) {
                    best_dot = d;
                    best = i;
                }
            }
            cl.assignment[p] = best;
        }

    for (int asg : cl.assignment)
        if (asg >= 0) ++cl.counts[asg];
    return cl;
}

HazeLineClustering cluster_haze_lines(const RgbImage& hazy, const Airlight& a, int n_directions,
                                      int min_cluster) {
    return cluster_haze_lines(hazy, a, sphere_directions(n_directions), min_cluster);
}

ClusterDeviations cluster_deviations(const RgbImage& img, const Airlight& a,
                                     const HazeLineClustering& clustering) {
    if (clustering.assignment.size() != img.pixel_count())
        throw std::invalid_argument("cluster_deviations: clustering size mismatch");
    const int n_dirs = int(clustering.directions.size());
    std::vector<double> sum(n_dirs, 0.0), sum_sq(n_dirs, 0.0);
    for (size_t p = 0; p < img.pixel_count(); ++p) {
        const int c = clustering.assignment[p];
        if (c < 0 || clustering.counts[c] < clustering.min_cluster) continue;
        const double m = magnitude_from(img, p, a);
        sum[c] += m;
        sum_sq[c] += m * m;
    }
    ClusterDeviations dev;
    for (int c = 0; c < n_dirs; ++c) {
        const int n = clustering.counts[c];
        if (n < clustering.min_cluster) continue;
        const double mean = sum[c] / n;
        dev.cluster_ids.push_back(c);
        dev.values.push_back(std::sqrt(std::max(0.0, sum_sq[c] / n - mean * mean)));
    }
    return dev;
}

std::optional<double> metric_beta_hl(const RgbImage& hazy, const RgbImage& dehazed,
                                     const Airlight& a, const HazeLineClustering& clustering) {
    require_same_size(hazy, dehazed, "metric_beta_hl");
    const ClusterDeviations di = cluster_deviations(hazy, a, clustering);
    const ClusterDeviations dj = cluster_deviations(dehazed, a, clustering);
    if (di.values.empty()) return std::nullopt;
    double sum = 0.0;
    for (size_t i = 0; i < di.values.size(); ++i) {
        const double gap = di.values[i] - dj.values[i];
        sum += gap * gap;
    }
    return sum / double(di.values.size());
}

std::optional<double> metric_beta_hl(const RgbImage& hazy, const RgbImage& dehazed,
                                     const Airlight& a, int n_directions, int min_cluster) {
    return metric_beta_hl(hazy, dehazed, a,
                          cluster_haze_lines(hazy, a, n_directions, min_cluster));
}

MetricReport assess_pair(const RgbImage& hazy, const RgbImage& dehazed,
                         const MetricParams& params) {
    params.validate();
    require_same_size(hazy, dehazed, "assess_pair");

    const EdgeMask hazy_edges = visible_edges(hazy, params.edge_threshold);
    const EdgeMask dehazed_edges = visible_edges(dehazed, params.edge_threshold);

    MetricReport rep;
    rep.e = metric_e(hazy_edges, dehazed_edges);
    rep.r_bar = metric_rbar(hazy_edges, dehazed_edges);
    rep.sigma = metric_sigma(hazy, dehazed);
    rep.alpha_dc = metric_alpha_dc(hazy, dehazed, params.dc_patch_radius);

    const GrayMap dark = dark_channel(hazy, params.dc_patch_radius);
    const Airlight a = estimate_airlight_dcp(hazy, dark, params.top_fraction);
    rep.beta_hl = metric_beta_hl(hazy, dehazed, a, params.n_directions, params.min_cluster);
    return rep;
}

}  // namespace hazekit
