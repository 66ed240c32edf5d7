#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "signrec/frames.hpp"
#include "signrec/geometry.hpp"

namespace signrec {

// Per-layer pixel counts over the 4096 depth layers; depth 0 (no reading)
// is never counted.
struct DepthHistogram {
    std::array<std::uint32_t, 4096> bins{};

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (std::uint32_t b : bins) sum += b;
        return sum;
    }
};

// Binary hand mask: all pixels whose depth falls in [near_depth, far_depth].
struct HandMask {
    int width = 0;
    int height = 0;
    std::vector<Pixel> pixels; // row-major order
    int near_depth = 0;
    int far_depth = 0;
};

struct SegmentationConfig {
    int threshold = 150;       // band width in depth layers beyond the nearest object
    int noise_window = 16;     // layers pooled when probing for the nearest object
    int min_object_size = 400; // pixels
};

// Optional pre-filter standing in for skeleton-gated segmentation: zero out
// every pixel not covered by the body mask before histogramming.
using BodyMask = std::vector<std::uint8_t>; // width*height, nonzero = keep

DepthFrame apply_body_mask(const DepthFrame& frame, const BodyMask& mask);

DepthHistogram build_histogram(const DepthFrame& frame);

// Front layer of the nearest object: the smallest depth d with readings at d
// whose cumulative count over [d, d + noise_window] reaches min_object_size.
// Isolated speckle layers never qualify.
int find_nearest_object(const DepthHistogram& hist, int min_object_size = 400,
                        int noise_window = 16);

HandMask segment_hands(const DepthFrame& frame, int near_depth, int threshold = 150,
                       int min_object_size = 400);

// Debug dump: one "layer count" line per nonempty bin.
void dump_histogram(const DepthHistogram& hist, const std::string& path);

} // namespace signrec
