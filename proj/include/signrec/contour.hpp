#pragma once

#include <string>
#include <vector>

#include "signrec/clustering.hpp"
#include "signrec/geometry.hpp"

namespace signrec {

// Ordered outer boundary, clockwise in image coordinates, starting at the
// topmost-then-leftmost boundary pixel. Thin one-pixel spurs appear twice
// (the trace walks out and back); the closing start pixel is not repeated.
struct Contour {
    std::vector<Pixel> points;
};

struct SampledBoundary {
    int count = 0;              // number of angular bins, power of two
    std::vector<double> radii;  // max centroid distance per bin, gaps interpolated
    double centroid_x = 0.0;
    double centroid_y = 0.0;
};

// Moore-neighbor tracing with 8-connectivity over the cluster's pixel set.
// If the cluster fragments, the connected region with the most pixels wins.
Contour trace_contour(const HandCluster& cluster);

// Equal-angle resampling of a contour into n bins around the centroid.
// Each contour pixel lands in bin floor(angle / (2*pi/n)); a bin keeps the
// largest radius it sees; empty bins are filled by circular interpolation.
SampledBoundary equal_angle_sample(const Contour& contour, const Centroid& centroid, int n);
SampledBoundary equal_angle_sample(const Contour& contour, double cx, double cy, int n);

// Debug overlay: PGM with contour pixels at maxval.
void write_contour_overlay(const Contour& contour, int width, int height,
                           const std::string& path);

} // namespace signrec
