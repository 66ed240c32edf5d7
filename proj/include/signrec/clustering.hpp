#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "signrec/geometry.hpp"
#include "signrec/segmentation.hpp"

namespace signrec {

enum class Side { left, right, only };

const char* side_name(Side side);

struct HandCluster {
    std::vector<Pixel> pixels;
    Centroid centroid;
    Side side = Side::only;
};

struct ClusterConfig {
    double merge_distance = 80.0; // centroids closer than this collapse to one hand
    int max_iterations = 100;
    bool random_init = false;     // seeded-random seeding instead of extreme-x
    std::uint32_t seed = 0;
    bool parallel = false;        // data-parallel assignment; result identical to serial
};

struct KMeansResult {
    std::vector<HandCluster> clusters; // one or two, left first
    bool converged = true;
    int iterations = 0;
    bool merged = false;               // merge rule or empty-cluster collapse fired
    std::vector<double> objective;     // within-cluster squared distance per iteration
};

// Deterministic seeding: (pixel with minimum x, pixel with maximum x),
// ties broken by minimum y.
std::pair<Pixel, Pixel> init_centroids(const HandMask& mask);

// Lloyd's algorithm with K=2 over pixel coordinates, then the centroid-merge
// rule. Ties in the assignment step go to the lower-index centroid.
KMeansResult kmeans_two(const HandMask& mask, const ClusterConfig& config = {});

} // namespace signrec
