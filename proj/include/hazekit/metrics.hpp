#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hazekit/dcp.hpp"
#include "hazekit/image.hpp"

namespace hazekit {

/// Visible-edge map: luminance gradient magnitude plus a per-pixel visibility
/// flag. A pixel is visible only when its gradient exceeds the threshold.
struct EdgeMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> visible;
    GrayMap gradient;

    size_t visible_count() const;
};

/// Pixel-to-haze-line assignment over a fixed set of unit sphere directions.
/// assignment is -1 for zero-magnitude pixels (the null cluster, never scored).
struct HazeLineClustering {
    std::vector<std::array<double, 3>> directions;
    std::vector<int> assignment;
    std::vector<int> counts;
    int min_cluster = 20;
};

/// Per-retained-cluster standard deviation of color-vector magnitudes,
/// in ascending cluster-index order.
struct ClusterDeviations {
    std::vector<int> cluster_ids;
    std::vector<double> values;
};

struct MetricParams {
    double edge_threshold = 0.05;  // local-contrast visibility threshold
    int dc_patch_radius = 4;       // dark-channel patch for alpha
    int n_directions = 1000;       // haze-line sphere sampling
    int min_cluster = 20;          // smallest cluster kept for beta
    double top_fraction = 0.001;   // airlight selection for beta

    void validate() const;
};

/// Scores for one (hazy, dehazed) pair. Metrics that are undefined for the
/// pair (no visible edges, no retained clusters) stay empty.
struct MetricReport {
    std::optional<double> e;
    std::optional<double> r_bar;
    double sigma = 0.0;
    double alpha_dc = 0.0;
    std::optional<double> beta_hl;
    std::optional<double> neglected_term;
};

/// Gradient is the 3x3 central-difference magnitude of the luminance
/// (channel mean), with indices clamped at borders. A pixel is visible when
/// both its gradient and the Michelson contrast of the 5x5 luminance window
/// around it exceed the threshold.
EdgeMask visible_edges(const RgbImage& img, double contrast_threshold);

/// Rate of newly visible edges: (n_dehazed - n_hazy) / n_hazy.
/// Undefined when the hazy image has no visible edges.
std::optional<double> metric_e(const EdgeMask& hazy, const EdgeMask& dehazed);
std::optional<double> metric_e(const RgbImage& hazy, const RgbImage& dehazed,
                               double edge_threshold);

/// Geometric mean, over the dehazed image's visible edges, of the gradient
/// ratio dehazed/hazy. Undefined when the dehazed image has no visible edges.
std::optional<double> metric_rbar(const EdgeMask& hazy, const EdgeMask& dehazed);
std::optional<double> metric_rbar(const RgbImage& hazy, const RgbImage& dehazed,
                                  double edge_threshold);

/// Percentage of pixels saturated (any channel at 0 or 255 after 8-bit
/// quantization) in the dehazed image but not in the hazy one.
double metric_sigma(const RgbImage& hazy, const RgbImage& dehazed);

/// Mean squared difference of the two dark channels.
double metric_alpha_dc(const RgbImage& hazy, const RgbImage& dehazed, int patch_radius);

/// Deterministic golden-angle (Fibonacci) lattice of n unit vectors.
std::vector<std::array<double, 3>> sphere_directions(int n);

HazeLineClustering cluster_haze_lines(const RgbImage& hazy, const Airlight& a,
                                      std::vector<std::array<double, 3>> directions,
                                      int min_cluster);
HazeLineClustering cluster_haze_lines(const RgbImage& hazy, const Airlight& a, int n_directions,
                                      int min_cluster);

/// Population standard deviation of ||img(x) - A|| per retained cluster.
ClusterDeviations cluster_deviations(const RgbImage& img, const Airlight& a,
                                     const HazeLineClustering& clustering);

/// Mean over retained clusters of the squared deviation gap between the two
/// images; clusters come from the hazy image. Undefined with zero retained
/// clusters.
std::optional<double> metric_beta_hl(const RgbImage& hazy, const RgbImage& dehazed,
                                     const Airlight& a, int n_directions, int min_cluster);
std::optional<double> metric_beta_hl(const RgbImage& hazy, const RgbImage& dehazed,
                                     const Airlight& a, const HazeLineClustering& clustering);

/// All five scores for one pair; the airlight for beta is estimated from the
/// hazy image with the dark-channel estimator.
MetricReport assess_pair(const RgbImage& hazy, const RgbImage& dehazed,
                         const MetricParams& params);

}  // namespace hazekit
