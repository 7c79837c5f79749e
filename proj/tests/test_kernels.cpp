#include <doctest.h>

#include "hazekit/kernels.hpp"
#include "hazekit/reference.hpp"
#include "testutil.hpp"

using namespace hazekit;
using testutil::Rng;

namespace {

double max_abs_diff(const GrayMap& a, const GrayMap& b) {
    REQUIRE(a.same_size(b));
    double m = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i)
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    return m;
}

}  // namespace

TEST_CASE("containers reject degenerate dimensions and bad filter params") {
    CHECK_THROWS_AS(GrayMap(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(RgbImage(3, 0), std::invalid_argument);
    const FilterParams bad_radius{0, 1e-3};
    CHECK_THROWS_AS(bad_radius.validate(), std::invalid_argument);
    const FilterParams bad_eps{3, 0.0};
    CHECK_THROWS_AS(bad_eps.validate(), std::invalid_argument);
    GrayMap map(4, 4, 0.5);
    CHECK_THROWS_AS(min_filter(map, 0), std::invalid_argument);
    CHECK_THROWS_AS(box_mean_filter(map, 0), std::invalid_argument);
}

TEST_CASE("min_channel basics") {
    RgbImage constant(4, 3, 0.5, 0.5, 0.5);
    GrayMap mc = min_channel(constant);
    for (double v : mc.data) CHECK(v == 0.5);

    RgbImage one(1, 1, 0.9, 0.2, 0.7);
    CHECK(min_channel(one).at(0, 0) == 0.2);
}

TEST_CASE("min_channel matches element-wise oracle") {
    Rng rng(101);
    const RgbImage img = testutil::random_image(rng, 3, 3);
    const GrayMap got = min_channel(img);
    const GrayMap want = reference::min_channel(img);
    CHECK(max_abs_diff(got, want) == 0.0);
}

TEST_CASE("channel_mean basics and oracle") {
    RgbImage one(1, 1, 0.3, 0.6, 0.9);
    CHECK(channel_mean(one).at(0, 0) == doctest::Approx(0.6).epsilon(1e-15));

    RgbImage gray(5, 4, 0.37, 0.37, 0.37);
    for (double v : channel_mean(gray).data) CHECK(v == doctest::Approx(0.37).epsilon(1e-15));

    Rng rng(102);
    const RgbImage img = testutil::random_image(rng, 8, 8);
    CHECK(max_abs_diff(channel_mean(img), reference::channel_mean(img)) < 1e-15);
}

TEST_CASE("min_channel never exceeds channel_mean") {
    Rng rng(103);
    const RgbImage img = testutil::random_image(rng, 17, 11);
    const GrayMap mc = min_channel(img);
    const GrayMap cm = channel_mean(img);
    for (size_t i = 0; i < mc.data.size(); ++i) CHECK(mc.data[i] <= cm.data[i] + 1e-15);
}

TEST_CASE("min_filter on constants and impulses") {
    GrayMap constant(6, 5, 0.42);
    GrayMap filtered = min_filter(constant, 2);
    for (double v : filtered.data) CHECK(v == 0.42);

    GrayMap ones(7, 7, 1.0);
    ones.at(3, 3) = 0.0;
    GrayMap eroded = min_filter(ones, 1);
    for (int y = 0; y < 7; ++y)
        for (int x = 0; x < 7; ++x) {
            const bool in_block = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
            CHECK(eroded.at(x, y) == (in_block ? 0.0 : 1.0));
        }
}

TEST_CASE("min_filter equals brute-force window scan exactly") {
    Rng rng(104);
    const GrayMap map = testutil::random_map(rng, 16, 16);
    CHECK(max_abs_diff(min_filter(map, 4), reference::min_filter(map, 4)) == 0.0);

    // assorted shapes and radii, including radius larger than the image
    for (int trial = 0; trial < 20; ++trial) {
        const int w = rng.uniform_int(1, 40), h = rng.uniform_int(1, 40);
        const int r = rng.uniform_int(1, 9);
        const GrayMap m = testutil::random_map(rng, w, h);
        CHECK(max_abs_diff(min_filter(m, r), reference::min_filter(m, r)) == 0.0);
    }
}

TEST_CASE("min_filter output never exceeds input") {
    Rng rng(105);
    const GrayMap map = testutil::random_map(rng, 23, 19);
    const GrayMap filtered = min_filter(map, 3);
    for (size_t i = 0; i < map.data.size(); ++i) CHECK(filtered.data[i] <= map.data[i]);
}

TEST_CASE("box_mean_filter on constants and impulses") {
    GrayMap constant(9, 4, 0.77);
    for (double v : box_mean_filter(constant, 3).data)
        CHECK(v == doctest::Approx(0.77).epsilon(1e-12));

    GrayMap zeros(9, 9, 0.0);
    zeros.at(4, 4) = 1.0;
    GrayMap blurred = box_mean_filter(zeros, 1);
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 9; ++x) {
            const bool covered = std::abs(x - 4) <= 1 && std::abs(y - 4) <= 1;
            CHECK(blurred.at(x, y) == doctest::Approx(covered ? 1.0 / 9.0 : 0.0).epsilon(1e-12));
        }
}

TEST_CASE("box_mean_filter matches brute-force oracle") {
    Rng rng(106);
    const GrayMap map = testutil::random_map(rng, 32, 32);
    CHECK(max_abs_diff(box_mean_filter(map, 5), reference::box_mean_filter(map, 5)) < 1e-9);

    for (int trial = 0; trial < 20; ++trial) {
        const int w = rng.uniform_int(1, 48), h = rng.uniform_int(1, 48);
        const int r = rng.uniform_int(1, 10);
        const GrayMap m = testutil::random_map(rng, w, h);
        CHECK(max_abs_diff(box_mean_filter(m, r), reference::box_mean_filter(m, r)) < 1e-9);
    }
}

TEST_CASE("guided_filter is the identity on constant input") {
    Rng rng(107);
    const GrayMap guide = testutil::random_map(rng, 12, 10);
    const GrayMap input(12, 10, 0.6);
    const GrayMap out = guided_filter(guide, input, FilterParams{3, 1e-3});
    for (double v : out.data) CHECK(v == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("guided_filter self-guidance with tiny epsilon is near-identity") {
    Rng rng(108);
    const GrayMap guide = testutil::random_map(rng, 16, 16, 0.1, 0.9);
    const GrayMap out = guided_filter(guide, guide, FilterParams{2, 1e-10});
    for (size_t i = 0; i < out.data.size(); ++i)
        CHECK(out.data[i] == doctest::Approx(guide.data[i]).epsilon(1e-4));
}

TEST_CASE("guided_filter matches per-window least-squares oracle") {
    Rng rng(109);
    const GrayMap guide = testutil::random_map(rng, 24, 24);
    const GrayMap input = testutil::random_map(rng, 24, 24);
    const GrayMap got = guided_filter(guide, input, FilterParams{3, 1e-3});
    const GrayMap want = reference::guided_filter(guide, input, 3, 1e-3);
    CHECK(max_abs_diff(got, want) < 1e-6);
}

TEST_CASE("guided_filter rejects dimension mismatch") {
    GrayMap a(4, 4, 0.5), b(5, 4, 0.5);
    CHECK_THROWS_AS(guided_filter(a, b, FilterParams{2, 1e-3}), std::invalid_argument);
}

TEST_CASE("filters preserve dimensions and are deterministic") {
    Rng rng(110);
    const GrayMap map = testutil::random_map(rng, 21, 13);
    const RgbImage img = testutil::random_image(rng, 21, 13);

    const GrayMap m1 = min_filter(map, 2), m2 = min_filter(map, 2);
    CHECK(m1.data == m2.data);
    CHECK((m1.width == 21 && m1.height == 13));

    const GrayMap b1 = box_mean_filter(map, 4), b2 = box_mean_filter(map, 4);
    CHECK(b1.data == b2.data);

    const GrayMap g1 = guided_filter(map, channel_mean(img), FilterParams{5, 1e-3});
    const GrayMap g2 = guided_filter(map, channel_mean(img), FilterParams{5, 1e-3});
    CHECK(g1.data == g2.data);
}
