#include "signrec/contour.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "signrec/error.hpp"
#include "signrec/frames.hpp"

namespace signrec {

namespace {

// clockwise 8-neighborhood in image coordinates (y grows downward)
constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1}; // E SE S SW W NW N NE
constexpr int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

struct Bitmap {
    int x0 = 0, y0 = 0, w = 0, h = 0;
    std::vector<std::uint8_t> cells;

    explicit Bitmap(const std::vector<Pixel>& pixels) {
        int x1 = pixels.front().x, y1 = pixels.front().y;
        x0 = x1; y0 = y1;
        for (const Pixel& p : pixels) {
            x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
        }
        --x0; --y0; // one-pixel margin so neighbor probes never leave the grid
        w = x1 - x0 + 2;
        h = y1 - y0 + 2;
        cells.assign(static_cast<std::size_t>(w) * h, 0);
        for (const Pixel& p : pixels) at(p.x, p.y) = 1;
    }

    std::uint8_t& at(int x, int y) {
        return cells[static_cast<std::size_t>(y - y0) * w + (x - x0)];
    }
    bool member(int x, int y) const {
        if (x < x0 || y < y0 || x >= x0 + w || y >= y0 + h) return false;
        return cells[static_cast<std::size_t>(y - y0) * w + (x - x0)] != 0;
    }
};

// pixels of the largest 8-connected component, in input order
std::vector<Pixel> largest_component(const std::vector<Pixel>& pixels, const Bitmap& map) {
    Bitmap visited = map;
    std::fill(visited.cells.begin(), visited.cells.end(), 0);
    std::vector<Pixel> best, current, stack;
    for (const Pixel& seed : pixels) {
        if (visited.member(seed.x, seed.y))
            continue;
        current.clear();
        stack.assign(1, seed);
        visited.at(seed.x, seed.y) = 1;
        while (!stack.empty()) {
            const Pixel p = stack.back();
            stack.pop_back();
            current.push_back(p);
            for (int d = 0; d < 8; ++d) {
                const int nx = p.x + kDx[d], ny = p.y + kDy[d];
                if (map.member(nx, ny) && !visited.member(nx, ny)) {
                    visited.at(nx, ny) = 1;
                    stack.push_back({nx, ny});
                }
            }
        }
        if (current.size() > best.size())
            best = current;
    }
    return best;
}

struct TraceState {
    Pixel at;
    Pixel backtrack;

    friend bool operator==(const TraceState&, const TraceState&) = default;
};

int direction_index(const Pixel& from, const Pixel& to) {
    for (int d = 0; d < 8; ++d)
        if (from.x + kDx[d] == to.x && from.y + kDy[d] == to.y)
            return d;
    return -1;
}

// one Moore step: scan the neighborhood clockwise starting just past the
// backtrack; the first member becomes the next pixel, the candidate examined
// right before it the next backtrack
std::optional<TraceState> moore_step(const TraceState& s, const Bitmap& map) {
    const int from = direction_index(s.at, s.backtrack);
    for (int i = 1; i <= 8; ++i) {
        const int d = (from + i) % 8;
        const int nx = s.at.x + kDx[d], ny = s.at.y + kDy[d];
        if (map.member(nx, ny)) {
            const int b = (from + i - 1) % 8;
            return TraceState{{nx, ny}, {s.at.x + kDx[b], s.at.y + kDy[b]}};
        }
    }
    return std::nullopt; // isolated pixel
}

} // namespace

Contour trace_contour(const HandCluster& cluster) {
    if (cluster.pixels.size() < 8)
        throw Error(Errc::region_too_small, "cluster has fewer than 8 pixels");

    const Bitmap map(cluster.pixels);
    const std::vector<Pixel> region = largest_component(cluster.pixels, map);
    const Bitmap region_map(region);

    Pixel start = region.front();
    for (const Pixel& p : region)
        if (p.y < start.y || (p.y == start.y && p.x < start.x))
            start = p;

    Contour contour;
    contour.points.push_back(start);

    // the row above the start is empty, so west of it is never a member
    const TraceState initial{start, {start.x - 1, start.y}};
    const auto first = moore_step(initial, region_map);
    if (!first)
        return contour;
    contour.points.push_back(first->at);

    TraceState state = *first;
    const std::size_t max_steps = 4 * region.size() + 8;
    for (std::size_t step = 0; step < max_steps; ++step) {
        const auto next = moore_step(state, region_map);
        if (!next)
            break;
        // stop when the start is re-entered the way it was first entered
        // (Jacob's criterion), or when the walk closes on its first move
        if (*next == initial || *next == *first)
            break;
        contour.points.push_back(next->at);
        state = *next;
    }
    if (contour.points.size() > 1 && contour.points.back() == contour.points.front())
        contour.points.pop_back();
    return contour;
}

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Bin lookup canonicalized by quadrant: rotating an offset by exactly 90
// degrees increments the quadrant and leaves the local angle untouched, so
// bins shift by exactly n/4.
int angle_bin(double rx, double ry, int n) {
    int quadrant;
    double u, v;
    if (rx > 0 && ry >= 0)      { quadrant = 0; u = rx;  v = ry;  }
    else if (ry > 0 && rx <= 0) { quadrant = 1; u = ry;  v = -rx; }
    else if (rx < 0 && ry <= 0) { quadrant = 2; u = -rx; v = -ry; }
    else                        { quadrant = 3; u = -ry; v = rx;  }
    const int quarter = n / 4;
    int k = static_cast<int>(std::atan2(v, u) / (kTwoPi / n));
    if (k >= quarter) k = quarter - 1;
    return quadrant * quarter + k;
}

template <typename RelFn>
SampledBoundary sample_impl(const Contour& contour, double cx, double cy, int n, RelFn rel) {
    if (n < 4 || (n & (n - 1)) != 0)
        throw Error(Errc::not_power_of_two, "sample count must be a power of two >= 4");
    if (contour.points.empty())
        throw Error(Errc::all_bins_empty, "empty contour");

    SampledBoundary out;
    out.count = n;
    out.centroid_x = cx;
    out.centroid_y = cy;
    out.radii.assign(n, 0.0);
    std::vector<std::uint8_t> occupied(n, 0);

    bool any = false;
    for (const Pixel& p : contour.points) {
        const auto [rx, ry] = rel(p);
        if (rx == 0.0 && ry == 0.0)
            continue; // angle undefined at the centroid itself
        const double r = std::sqrt(rx * rx + ry * ry);
        const int k = angle_bin(rx, ry, n);
        if (!occupied[k] || r > out.radii[k]) {
            out.radii[k] = r;
            occupied[k] = 1;
        }
        any = true;
    }
    if (!any)
        throw Error(Errc::degenerate_shape, "every contour pixel coincides with the centroid");

    // fill gaps by linear interpolation between the nearest occupied bins
    for (int k = 0; k < n; ++k) {
        if (occupied[k])
            continue;
        int dp = 1, dq = 1;
        while (!occupied[(k - dp + n * 2) % n]) ++dp;
        while (!occupied[(k + dq) % n]) ++dq;
        const double rp = out.radii[(k - dp + n * 2) % n];
        const double rq = out.radii[(k + dq) % n];
        out.radii[k] = (rp * dq + rq * dp) / (dp + dq);
    }
    return out;
}

} // namespace

SampledBoundary equal_angle_sample(const Contour& contour, const Centroid& centroid, int n) {
    return sample_impl(contour, centroid.x(), centroid.y(), n, [&](const Pixel& p) {
        return std::pair<double, double>(centroid.rel_x(p), centroid.rel_y(p));
    });
}

SampledBoundary equal_angle_sample(const Contour& contour, double cx, double cy, int n) {
    return sample_impl(contour, cx, cy, n, [&](const Pixel& p) {
        return std::pair<double, double>(p.x - cx, p.y - cy);
    });
}

void write_contour_overlay(const Contour& contour, int width, int height,
                           const std::string& path) {
    DepthFrame overlay(width, height);
    for (const Pixel& p : contour.points)
        if (p.x >= 0 && p.x < width && p.y >= 0 && p.y < height)
            overlay.at(p.x, p.y) = kMaxDepth;
    write_frame(overlay, path, FrameFormat::pgm);
}

} // namespace signrec
