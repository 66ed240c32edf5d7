#include "signrec/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <thread>

#include "signrec/error.hpp"

namespace signrec {

const char* side_name(Side side) {
    switch (side) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::only: return "only";
    }
    return "?";
}

std::pair<Pixel, Pixel> init_centroids(const HandMask& mask) {
    if (mask.pixels.empty())
        throw Error(Errc::too_few_pixels, "cannot seed centroids on an empty mask");
    Pixel lo = mask.pixels.front(), hi = mask.pixels.front();
    for (const Pixel& p : mask.pixels) {
        if (p.x < lo.x || (p.x == lo.x && p.y < lo.y)) lo = p;
        if (p.x > hi.x || (p.x == hi.x && p.y < hi.y)) hi = p;
    }
    return {lo, hi};
}

namespace {

// integer partial sums for one cluster over a pixel range; exact, so chunked
// reductions merge to the same result as a serial pass
struct ClusterSums {
    long long n = 0, sx = 0, sy = 0, sxx = 0, syy = 0;

    void add(const Pixel& p) {
        ++n;
        sx += p.x;
        sy += p.y;
        sxx += static_cast<long long>(p.x) * p.x;
        syy += static_cast<long long>(p.y) * p.y;
    }
    void merge(const ClusterSums& o) {
        n += o.n;
        sx += o.sx;
        sy += o.sy;
        sxx += o.sxx;
        syy += o.syy;
    }
    // sum of squared distances to the cluster mean
    double scatter() const {
        if (n == 0) return 0.0;
        return static_cast<double>(sxx + syy) -
               (static_cast<double>(sx) * sx + static_cast<double>(sy) * sy) /
                   static_cast<double>(n);
    }
};

struct AssignOutcome {
    ClusterSums sums[2];
    long long changed = 0;
};

AssignOutcome assign_range(const std::vector<Pixel>& pixels, std::size_t begin, std::size_t end,
                           double c0x, double c0y, double c1x, double c1y,
                           std::uint8_t* assignment) {
    AssignOutcome out;
    for (std::size_t i = begin; i < end; ++i) {
        const Pixel& p = pixels[i];
        const double d0x = p.x - c0x, d0y = p.y - c0y;
        const double d1x = p.x - c1x, d1y = p.y - c1y;
        const std::uint8_t a = (d0x * d0x + d0y * d0y <= d1x * d1x + d1y * d1y) ? 0 : 1;
        out.changed += assignment[i] != a;
        assignment[i] = a;
        out.sums[a].add(p);
    }
    return out;
}

std::pair<ClusterSums, ClusterSums> assign_step(const std::vector<Pixel>& pixels,
                                                double c0x, double c0y, double c1x, double c1y,
                                                std::vector<std::uint8_t>& assignment,
                                                bool parallel, long long& changed) {
    const std::size_t n = pixels.size();
    std::size_t chunks = 1;
    if (parallel && n >= 8192) {
        const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
        chunks = std::min<std::size_t>(std::min(hw, 4u), n / 4096);
    }
    AssignOutcome total;
    if (chunks <= 1) {
        total = assign_range(pixels, 0, n, c0x, c0y, c1x, c1y, assignment.data());
    } else {
        std::vector<std::future<AssignOutcome>> futures;
        const std::size_t step = (n + chunks - 1) / chunks;
        for (std::size_t c = 1; c < chunks; ++c) {
            const std::size_t b = c * step, e = std::min(n, b + step);
            futures.push_back(std::async(std::launch::async, [&, b, e] {
                return assign_range(pixels, b, e, c0x, c0y, c1x, c1y, assignment.data());
            }));
        }
        total = assign_range(pixels, 0, step, c0x, c0y, c1x, c1y, assignment.data());
        for (auto& f : futures) {
            const AssignOutcome part = f.get();
            total.sums[0].merge(part.sums[0]);
            total.sums[1].merge(part.sums[1]);
            total.changed += part.changed;
        }
    }
    changed = total.changed;
    return {total.sums[0], total.sums[1]};
}

HandCluster collect(const std::vector<Pixel>& pixels, const std::vector<std::uint8_t>& assignment,
                    std::uint8_t which) {
    HandCluster cluster;
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        if (assignment[i] == which) {
            cluster.pixels.push_back(pixels[i]);
            cluster.centroid.add(pixels[i]);
        }
    }
    return cluster;
}

HandCluster collect_all(const std::vector<Pixel>& pixels) {
    HandCluster cluster;
    cluster.pixels = pixels;
    cluster.centroid = Centroid::of(pixels);
    cluster.side = Side::only;
    return cluster;
}

} // namespace

KMeansResult kmeans_two(const HandMask& mask, const ClusterConfig& config) {
    const std::vector<Pixel>& pixels = mask.pixels;
    if (pixels.empty())
        throw Error(Errc::too_few_pixels, "cannot cluster an empty mask");
    if (config.max_iterations < 1)
        throw Error(Errc::invalid_spec, "max_iterations must be >= 1");
    if (config.merge_distance <= 0)
        throw Error(Errc::invalid_spec, "merge_distance must be positive");

    double c0x, c0y, c1x, c1y;
    if (config.random_init) {
        std::mt19937 rng(config.seed);
        const std::size_t i0 = rng() % pixels.size();
        std::size_t i1 = i0;
        while (pixels.size() > 1 && i1 == i0) i1 = rng() % pixels.size();
        c0x = pixels[i0].x; c0y = pixels[i0].y;
        c1x = pixels[i1].x; c1y = pixels[i1].y;
    } else {
        const auto [lo, hi] = init_centroids(mask);
        c0x = lo.x; c0y = lo.y;
        c1x = hi.x; c1y = hi.y;
    }

    KMeansResult result;
    std::vector<std::uint8_t> assignment(pixels.size(), 255);
    ClusterSums s0, s1;
    bool empty_cluster = false;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        long long changed = 0;
        std::tie(s0, s1) = assign_step(pixels, c0x, c0y, c1x, c1y, assignment,
                                       config.parallel, changed);
        result.iterations = iter + 1;
        result.objective.push_back(s0.scatter() + s1.scatter());
        if (s0.n == 0 || s1.n == 0) {
            empty_cluster = true;
            break;
        }
        c0x = static_cast<double>(s0.sx) / s0.n;
        c0y = static_cast<double>(s0.sy) / s0.n;
        c1x = static_cast<double>(s1.sx) / s1.n;
        c1y = static_cast<double>(s1.sy) / s1.n;
        if (changed == 0) {
            result.converged = true;
            break;
        }
        result.converged = false; // ran out of iterations unless the loop breaks
    }

    if (empty_cluster) {
        result.converged = true;
        result.merged = true;
        result.clusters.push_back(collect_all(pixels));
        return result;
    }

    const double gap = std::hypot(c0x - c1x, c0y - c1y);
    if (gap < config.merge_distance) {
        result.merged = true;
        result.clusters.push_back(collect_all(pixels));
        return result;
    }

    HandCluster a = collect(pixels, assignment, 0);
    HandCluster b = collect(pixels, assignment, 1);
    const double ax = a.centroid.x(), bx = b.centroid.x();
    if (bx < ax || (bx == ax && b.centroid.y() < a.centroid.y()))
        std::swap(a, b);
    a.side = Side::left;
    b.side = Side::right;
    result.clusters.push_back(std::move(a));
    result.clusters.push_back(std::move(b));
    return result;
}

} // namespace signrec
