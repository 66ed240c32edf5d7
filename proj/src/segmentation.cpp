#include "signrec/segmentation.hpp"

#include <fstream>

#include "signrec/error.hpp"

namespace signrec {

DepthFrame apply_body_mask(const DepthFrame& frame, const BodyMask& mask) {
    if (mask.size() != frame.depths.size())
        throw Error(Errc::invalid_spec, "body mask size does not match frame");
    DepthFrame out = frame;
    for (std::size_t i = 0; i < out.depths.size(); ++i)
        if (!mask[i])
            out.depths[i] = 0;
    return out;
}

DepthHistogram build_histogram(const DepthFrame& frame) {
    DepthHistogram hist;
    for (std::uint16_t d : frame.depths)
        if (d != 0)
            ++hist.bins[d];
    return hist;
}

int find_nearest_object(const DepthHistogram& hist, int min_object_size, int noise_window) {
    const int n = static_cast<int>(hist.bins.size());
    // running sum over the inclusive window [d, d + noise_window]
    std::uint64_t window = 0;
    for (int d = 0; d <= noise_window && d < n; ++d)
        window += hist.bins[d];
    for (int d = 0; d < n; ++d) {
        if (hist.bins[d] > 0 && window >= static_cast<std::uint64_t>(min_object_size))
            return d;
        window -= hist.bins[d];
        if (d + noise_window + 1 < n)
            window += hist.bins[d + noise_window + 1];
    }
    throw Error(Errc::no_object, "no depth layer accumulates enough pixels");
}

HandMask segment_hands(const DepthFrame& frame, int near_depth, int threshold,
                       int min_object_size) {
    if (threshold <= 0)
        throw Error(Errc::invalid_spec, "threshold must be positive");
    HandMask mask;
    mask.width = frame.width;
    mask.height = frame.height;
    mask.near_depth = near_depth;
    mask.far_depth = near_depth + threshold;
    for (int y = 0; y < frame.height; ++y) {
        for (int x = 0; x < frame.width; ++x) {
            const std::uint16_t d = frame.at(x, y);
            if (d != 0 && d >= near_depth && d <= mask.far_depth)
                mask.pixels.push_back({x, y});
        }
    }
    if (mask.pixels.size() < static_cast<std::size_t>(min_object_size))
        throw Error(Errc::too_few_pixels, "depth band holds fewer pixels than min_object_size");
    return mask;
}

void dump_histogram(const DepthHistogram& hist, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw Error(Errc::io_failure, "cannot create " + path);
    for (std::size_t d = 0; d < hist.bins.size(); ++d)
        if (hist.bins[d] > 0)
            out << d << " " << hist.bins[d] << "\n";
    if (!out)
        throw Error(Errc::io_failure, "write failed for " + path);
}

} // namespace signrec
