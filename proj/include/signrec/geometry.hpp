#pragma once

#include <cstdint>
#include <vector>

namespace signrec {

struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
};

// Exact rational centroid of a pixel set: mean = sum / count kept in integer
// form so that relative offsets (count*x - sum_x) / count are bit-stable under
// integer translation of the whole set.
struct Centroid {
    long long sum_x = 0;
    long long sum_y = 0;
    long long count = 0;

    void add(const Pixel& p) {
        sum_x += p.x;
        sum_y += p.y;
        ++count;
    }

    double x() const { return static_cast<double>(sum_x) / static_cast<double>(count); }
    double y() const { return static_cast<double>(sum_y) / static_cast<double>(count); }

    // offset of p from the centroid, evaluated with an exact integer numerator
    double rel_x(const Pixel& p) const {
        return static_cast<double>(count * p.x - sum_x) / static_cast<double>(count);
    }
    double rel_y(const Pixel& p) const {
        return static_cast<double>(count * p.y - sum_y) / static_cast<double>(count);
    }

    static Centroid of(const std::vector<Pixel>& pixels) {
        Centroid c;
        for (const Pixel& p : pixels) c.add(p);
        return c;
    }
};

} // namespace signrec
