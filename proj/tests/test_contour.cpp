#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "signrec/contour.hpp"
#include "signrec/error.hpp"
#include "test_util.hpp"

using namespace signrec;
using testutil::make_cluster;
using testutil::rasterize_disk;
using testutil::rasterize_rect;

namespace {

bool eight_neighbors(const Pixel& a, const Pixel& b) {
    return std::abs(a.x - b.x) <= 1 && std::abs(a.y - b.y) <= 1 && !(a == b);
}

std::set<std::pair<int, int>> pixel_set(const std::vector<Pixel>& pixels) {
    std::set<std::pair<int, int>> s;
    for (const Pixel& p : pixels)
        s.insert({p.x, p.y});
    return s;
}

} // namespace

TEST_CASE("filled rectangle perimeter") {
    const Contour contour = trace_contour(make_cluster(rasterize_rect(5, 5, 10, 5)));
    CHECK(contour.points.size() == 26); // 2*10 + 2*5 - 4
    CHECK(pixel_set(contour.points).size() == 26);
    for (std::size_t i = 1; i < contour.points.size(); ++i)
        CHECK(eight_neighbors(contour.points[i - 1], contour.points[i]));
    CHECK(eight_neighbors(contour.points.back(), contour.points.front()));
    CHECK(contour.points.front() == Pixel{5, 5}); // topmost-leftmost start
}

TEST_CASE("single row: every pixel is boundary") {
    const Contour contour = trace_contour(make_cluster(rasterize_rect(0, 0, 10, 1)));
    CHECK(pixel_set(contour.points).size() == 10);
    for (std::size_t i = 1; i < contour.points.size(); ++i)
        CHECK(eight_neighbors(contour.points[i - 1], contour.points[i]));
}

TEST_CASE("disk contour hugs the circle") {
    const Contour contour = trace_contour(make_cluster(rasterize_disk(100, 100, 30)));
    CHECK(contour.points.size() > 100);
    for (const Pixel& p : contour.points) {
        const double r = std::hypot(p.x - 100.0, p.y - 100.0);
        CHECK(r >= 29.0);
        CHECK(r <= 31.0);
    }
}

TEST_CASE("traced points are members with an exposed side") {
    SynthSpec spec;
    spec.number = 4;
    spec.seed = 2;
    const SynthFrame synth = synth_frame(spec);
    const HandCluster cluster = make_cluster(synth.hands[0].pixels);
    const Contour contour = trace_contour(cluster);
    const auto members = pixel_set(cluster.pixels);
    for (const Pixel& p : contour.points) {
        REQUIRE(members.count({p.x, p.y}) == 1);
        bool exposed = false;
        for (int dy = -1; dy <= 1 && !exposed; ++dy)
            for (int dx = -1; dx <= 1 && !exposed; ++dx)
                if ((dx || dy) && members.count({p.x + dx, p.y + dy}) == 0)
                    exposed = true;
        CHECK(exposed);
    }
}

TEST_CASE("largest fragment wins") {
    std::vector<Pixel> pixels = rasterize_rect(0, 0, 6, 6);       // 36 px
    const std::vector<Pixel> small = rasterize_rect(50, 50, 3, 3); // 9 px, detached
    pixels.insert(pixels.end(), small.begin(), small.end());
    const Contour contour = trace_contour(make_cluster(pixels));
    for (const Pixel& p : contour.points)
        CHECK(p.x < 10);
}

TEST_CASE("region too small") {
    CHECK_THROWS_AS(trace_contour(make_cluster(rasterize_rect(0, 0, 7, 1))), Error);
    try {
        trace_contour(make_cluster(rasterize_rect(0, 0, 7, 1)));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::region_too_small);
    }
}

TEST_CASE("equal-angle sampling of a disk") {
    const Contour contour = trace_contour(make_cluster(rasterize_disk(100, 100, 40)));
    const SampledBoundary boundary = equal_angle_sample(contour, 100.0, 100.0, 128);
    REQUIRE(boundary.radii.size() == 128);
    for (double r : boundary.radii) {
        CHECK(r >= 39.0);
        CHECK(r <= 41.0);
    }
}

TEST_CASE("one point per quadrant bin") {
    Contour contour;
    contour.points = {{10, 0}, {0, 10}, {-10, 0}, {0, -10}};
    const SampledBoundary boundary = equal_angle_sample(contour, 0.0, 0.0, 4);
    REQUIRE(boundary.radii.size() == 4);
    for (double r : boundary.radii)
        CHECK(r == 10.0);
}

TEST_CASE("synthetic hands occupy most bins") {
    for (int number = 1; number <= 5; ++number) {
        SynthSpec spec;
        spec.number = number;
        spec.seed = 7;
        const SynthFrame synth = synth_frame(spec);
        const HandCluster cluster = make_cluster(synth.hands[0].pixels);
        const Contour contour = trace_contour(cluster);
        // independent bin count straight from the definition
        std::set<int> occupied;
        const double cx = cluster.centroid.x(), cy = cluster.centroid.y();
        for (const Pixel& p : contour.points) {
            double angle = std::atan2(p.y - cy, p.x - cx);
            if (angle < 0) angle += 2.0 * M_PI;
            int bin = static_cast<int>(angle / (2.0 * M_PI / 128));
            occupied.insert(std::min(bin, 127));
        }
        CHECK(occupied.size() >= 77); // 60% of 128
    }
}

TEST_CASE("90 degree rotation shifts bins by exactly n/4") {
    SynthSpec spec;
    spec.number = 3;
    spec.seed = 13;
    spec.jitter = 1.0;
    const SynthFrame synth = synth_frame(spec);
    std::vector<Pixel> rotated;
    for (const Pixel& p : synth.hands[0].pixels)
        rotated.push_back({-p.y, p.x});

    const HandCluster original = make_cluster(synth.hands[0].pixels);
    const HandCluster turned = make_cluster(rotated);
    const SampledBoundary a = equal_angle_sample(trace_contour(original), original.centroid, 128);
    const SampledBoundary b = equal_angle_sample(trace_contour(turned), turned.centroid, 128);
    for (int k = 0; k < 128; ++k)
        CHECK(b.radii[(k + 32) % 128] == a.radii[k]); // bit-exact
}

TEST_CASE("translation leaves the sampled radii bit-identical") {
    SynthSpec spec;
    spec.number = 5;
    spec.seed = 4;
    spec.jitter = 0.7;
    const SynthFrame synth = synth_frame(spec);
    std::vector<Pixel> moved;
    for (const Pixel& p : synth.hands[0].pixels)
        moved.push_back({p.x + 137, p.y - 61});

    const HandCluster original = make_cluster(synth.hands[0].pixels);
    const HandCluster shifted = make_cluster(moved);
    const SampledBoundary a = equal_angle_sample(trace_contour(original), original.centroid, 128);
    const SampledBoundary b = equal_angle_sample(trace_contour(shifted), shifted.centroid, 128);
    CHECK(a.radii == b.radii);
}

TEST_CASE("power-of-two scaling scales radii exactly") {
    std::mt19937 rng(55);
    Contour contour;
    while (contour.points.size() < 60) {
        const int x = static_cast<int>(rng() % 101) - 50;
        const int y = static_cast<int>(rng() % 101) - 50;
        if (x == 0 || y == 0 || std::abs(x) == std::abs(y))
            continue; // keep angles off exact bin boundaries
        contour.points.push_back({x, y});
    }
    Contour doubled;
    for (const Pixel& p : contour.points)
        doubled.points.push_back({2 * p.x, 2 * p.y});

    const SampledBoundary a = equal_angle_sample(contour, 0.0, 0.0, 128);
    const SampledBoundary b = equal_angle_sample(doubled, 0.0, 0.0, 128);
    for (int k = 0; k < 128; ++k)
        CHECK(b.radii[k] == 2.0 * a.radii[k]);
}

TEST_CASE("radii ignore contour traversal order") {
    const Contour contour = trace_contour(make_cluster(rasterize_disk(60, 60, 25)));
    Contour shuffled = contour;
    std::mt19937 rng(3);
    std::shuffle(shuffled.points.begin(), shuffled.points.end(), rng);
    const SampledBoundary a = equal_angle_sample(contour, 60.0, 60.0, 64);
    const SampledBoundary b = equal_angle_sample(shuffled, 60.0, 60.0, 64);
    CHECK(a.radii == b.radii);
}

TEST_CASE("degenerate sampling errors") {
    Contour at_centroid;
    at_centroid.points = {{5, 5}};
    try {
        equal_angle_sample(at_centroid, 5.0, 5.0, 16);
        FAIL("expected DegenerateShape");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::degenerate_shape);
    }
    try {
        equal_angle_sample(Contour{}, 0.0, 0.0, 16);
        FAIL("expected AllBinsEmpty");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::all_bins_empty);
    }
    CHECK_THROWS_AS(equal_angle_sample(at_centroid, 0.0, 0.0, 12), Error); // not a power of two
}

TEST_CASE("empty bins are interpolated, not errors") {
    Contour contour;
    contour.points = {{10, 0}, {0, 10}, {-10, 0}, {0, -10}};
    const SampledBoundary boundary = equal_angle_sample(contour, 0.0, 0.0, 128);
    for (double r : boundary.radii) {
        CHECK(r > 0.0);
        CHECK(r <= 10.0);
        CHECK(std::isfinite(r));
    }
}
