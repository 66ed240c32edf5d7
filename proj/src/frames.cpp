#include "signrec/frames.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "signrec/error.hpp"

namespace signrec {

void DepthFrame::validate() const {
    if (width <= 0 || height <= 0)
        throw Error(Errc::invalid_spec, "frame dimensions must be positive");
    if (depths.size() != static_cast<std::size_t>(width) * height)
        throw Error(Errc::invalid_spec, "depth buffer size does not match dimensions");
    for (std::uint16_t d : depths)
        if (d > kMaxDepth)
            throw Error(Errc::depth_out_of_range, "depth value exceeds 4095");
}

namespace {

constexpr char kDfrMagic[4] = {'D', 'F', 'R', '1'};
constexpr std::size_t kMaxPixels = std::size_t{1} << 26;

std::vector<std::uint8_t> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(Errc::io_failure, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::uint32_t le32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
           static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

DepthFrame read_dfr(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    if (bytes.size() < 12)
        throw Error(Errc::truncated_file, path + ": header truncated");
    const std::uint32_t w = le32(bytes.data() + 4);
    const std::uint32_t h = le32(bytes.data() + 8);
    if (w == 0 || h == 0 || static_cast<std::size_t>(w) * h > kMaxPixels)
        throw Error(Errc::unsupported_format, path + ": implausible dimensions");
    const std::size_t need = 12 + static_cast<std::size_t>(w) * h * 2;
    if (bytes.size() < need)
        throw Error(Errc::truncated_file, path + ": payload truncated");
    DepthFrame frame(static_cast<int>(w), static_cast<int>(h));
    const std::uint8_t* p = bytes.data() + 12;
    for (std::size_t i = 0; i < frame.depths.size(); ++i, p += 2) {
        const std::uint16_t d = static_cast<std::uint16_t>(p[0] | p[1] << 8);
        if (d > kMaxDepth)
            throw Error(Errc::depth_out_of_range, path + ": depth value exceeds 4095");
        frame.depths[i] = d;
    }
    return frame;
}

// PGM header tokens are separated by whitespace; '#' starts a comment line.
long pgm_token(const std::vector<std::uint8_t>& bytes, std::size_t& pos, const std::string& path) {
    while (pos < bytes.size()) {
        if (std::isspace(bytes[pos])) {
            ++pos;
        } else if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= bytes.size())
        throw Error(Errc::truncated_file, path + ": PGM header truncated");
    if (!std::isdigit(bytes[pos]))
        throw Error(Errc::unsupported_format, path + ": malformed PGM header");
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1'000'000'000)
            throw Error(Errc::unsupported_format, path + ": PGM header value out of range");
        ++pos;
    }
    return value;
}

DepthFrame read_pgm(const std::vector<std::uint8_t>& bytes, const std::string& path) {
    std::size_t pos = 2; // past "P5"
    const long w = pgm_token(bytes, pos, path);
    const long h = pgm_token(bytes, pos, path);
    const long maxval = pgm_token(bytes, pos, path);
    if (w <= 0 || h <= 0 || static_cast<std::size_t>(w) * h > kMaxPixels)
        throw Error(Errc::unsupported_format, path + ": implausible dimensions");
    if (maxval < 256 || maxval > 65535)
        throw Error(Errc::unsupported_format, path + ": need a 16-bit PGM (256 <= maxval <= 65535)");
    ++pos; // single whitespace after maxval
    const std::size_t need = static_cast<std::size_t>(w) * h * 2;
    if (bytes.size() < pos + need)
        throw Error(Errc::truncated_file, path + ": payload truncated");
    DepthFrame frame(static_cast<int>(w), static_cast<int>(h));
    const std::uint8_t* p = bytes.data() + pos;
    for (std::size_t i = 0; i < frame.depths.size(); ++i, p += 2) {
        const std::uint16_t d = static_cast<std::uint16_t>(p[0] << 8 | p[1]); // big-endian
        if (d > kMaxDepth)
            throw Error(Errc::depth_out_of_range, path + ": depth value exceeds 4095");
        frame.depths[i] = d;
    }
    return frame;
}

} // namespace

DepthFrame read_frame(const std::string& path) {
    const std::vector<std::uint8_t> bytes = read_all(path);
    if (bytes.size() >= 2 && bytes[0] == 'P') {
        if (bytes[1] == '5')
            return read_pgm(bytes, path);
        if (bytes[1] >= '1' && bytes[1] <= '6')
            throw Error(Errc::unsupported_format, path + ": only binary P5 PGM is supported");
    }
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kDfrMagic, 4) == 0)
        return read_dfr(bytes, path);
    throw Error(Errc::bad_magic, path + ": not a DFR or PGM file");
}

void write_frame(const DepthFrame& frame, const std::string& path, FrameFormat format) {
    frame.validate();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(Errc::io_failure, "cannot create " + path);
    if (format == FrameFormat::dfr) {
        out.write(kDfrMagic, 4);
        const std::uint32_t w = static_cast<std::uint32_t>(frame.width);
        const std::uint32_t h = static_cast<std::uint32_t>(frame.height);
        const std::uint8_t header[8] = {
            static_cast<std::uint8_t>(w), static_cast<std::uint8_t>(w >> 8),
            static_cast<std::uint8_t>(w >> 16), static_cast<std::uint8_t>(w >> 24),
            static_cast<std::uint8_t>(h), static_cast<std::uint8_t>(h >> 8),
            static_cast<std::uint8_t>(h >> 16), static_cast<std::uint8_t>(h >> 24)};
        out.write(reinterpret_cast<const char*>(header), 8);
        std::vector<std::uint8_t> payload(frame.depths.size() * 2);
        for (std::size_t i = 0; i < frame.depths.size(); ++i) {
            payload[2 * i] = static_cast<std::uint8_t>(frame.depths[i]);
            payload[2 * i + 1] = static_cast<std::uint8_t>(frame.depths[i] >> 8);
        }
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size()));
    } else {
        out << "P5\n" << frame.width << " " << frame.height << "\n" << kMaxDepth << "\n";
        std::vector<std::uint8_t> payload(frame.depths.size() * 2);
        for (std::size_t i = 0; i < frame.depths.size(); ++i) {
            payload[2 * i] = static_cast<std::uint8_t>(frame.depths[i] >> 8); // big-endian
            payload[2 * i + 1] = static_cast<std::uint8_t>(frame.depths[i]);
        }
        out.write(reinterpret_cast<const char*>(payload.data()),
                  static_cast<std::streamsize>(payload.size()));
    }
    if (!out)
        throw Error(Errc::io_failure, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Synthetic gesture generator
// ---------------------------------------------------------------------------

namespace {

constexpr int kHandSlab = 60;    // hand surface depth spread, layers
constexpr int kTorsoGap = 450;   // torso sits this far behind the hand surface
constexpr int kTorsoSlab = 80;

std::uint32_t pixel_hash(int x, int y) {
    std::uint64_t h = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                      static_cast<std::uint32_t>(y);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ULL;
    h ^= h >> 33;
    return static_cast<std::uint32_t>(h);
}

// uniform in [-1, 1], built from raw engine output so the stream does not
// depend on library distribution internals
double signed_unit(std::mt19937& rng) {
    return static_cast<double>(rng()) * (2.0 / 4294967295.0) - 1.0;
}

struct Capsule {
    double ax, ay, bx, by, half_width;

    bool contains(double px, double py) const {
        const double dx = bx - ax, dy = by - ay;
        const double len2 = dx * dx + dy * dy;
        double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = px - (ax + t * dx), ey = py - (ay + t * dy);
        return ex * ex + ey * ey <= half_width * half_width;
    }
};

void render_hand(DepthFrame& frame, HandTruth& truth, double cx, double cy,
                 const SynthSpec& spec, std::uint32_t hand_index) {
    const double radius = spec.palm_radius;
    const double finger_len = 0.5 * radius;
    const double finger_halfw = std::max(14.0, radius * (16.0 / 60.0)) / 2.0;
    // fan narrow and fingers short enough that any k-means split of one hand
    // stays within the merge distance, wide enough that 128 rays resolve the
    // finger valleys
    const double spread = 16.0 * 3.14159265358979323846 / 180.0;
    const double tilt = 0.12;
    const double up = -3.14159265358979323846 / 2.0;
    const double mirror = truth.side == HandSide::right ? 1.0 : -1.0;
    const int k = truth.label;

    std::mt19937 rng(spec.seed * 2654435761u + hand_index * 40503u + 1u);

    std::vector<Capsule> fingers;
    double reach = radius;
    for (int i = 0; i < k; ++i) {
        const double u_len = signed_unit(rng);
        const double u_ang = signed_unit(rng);
        const double len = finger_len + 3.0 * spec.jitter * u_len;
        const double delta = tilt + spread * (i - (k - 1) / 2.0) +
                             3.0 * spec.jitter * u_ang / (radius + finger_len);
        const double angle = up + mirror * delta;
        const double dx = std::cos(angle), dy = std::sin(angle);
        fingers.push_back({cx + 0.45 * radius * dx, cy + 0.45 * radius * dy,
                           cx + (radius + len) * dx, cy + (radius + len) * dy, finger_halfw});
        reach = std::max(reach, radius + len + finger_halfw);
    }

    const int x0 = std::max(0, static_cast<int>(std::floor(cx - reach)) - 1);
    const int x1 = std::min(frame.width - 1, static_cast<int>(std::ceil(cx + reach)) + 1);
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - reach)) - 1);
    const int y1 = std::min(frame.height - 1, static_cast<int>(std::ceil(cy + reach)) + 1);
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - cx, dy = y - cy;
            bool inside = dx * dx + dy * dy <= radius * radius;
            for (std::size_t f = 0; !inside && f < fingers.size(); ++f)
                inside = fingers[f].contains(x, y);
            if (!inside)
                continue;
            frame.at(x, y) = static_cast<std::uint16_t>(spec.hand_depth +
                                                        pixel_hash(x, y) % (kHandSlab + 1));
            truth.pixels.push_back({x, y});
            truth.centroid.add({x, y});
        }
    }
}

} // namespace

SynthFrame synth_frame(const SynthSpec& spec) {
    if (spec.number < 1 || spec.number > 10)
        throw Error(Errc::invalid_spec, "number must be in 1..10");
    if (spec.number >= 6 && spec.hands != Hands::two)
        throw Error(Errc::invalid_spec, "numbers 6..10 need both hands");
    if (spec.hands == Hands::two && spec.number < 2)
        throw Error(Errc::invalid_spec, "a two-hand frame needs number >= 2");
    if (spec.jitter < 0)
        throw Error(Errc::invalid_spec, "jitter must be >= 0");
    if (spec.palm_radius < 20 || spec.palm_radius > 100)
        throw Error(Errc::invalid_spec, "palm_radius must be in 20..100");
    if (spec.hand_depth < 1 || spec.hand_depth + kTorsoGap + kTorsoSlab > kMaxDepth)
        throw Error(Errc::invalid_spec, "hand_depth leaves no room for the torso slab");

    SynthFrame out;
    out.number = spec.number;
    DepthFrame& frame = out.frame;

    // torso slab behind the hands
    for (int y = 150; y < frame.height; ++y)
        for (int x = 140; x <= 500; ++x)
            frame.at(x, y) = static_cast<std::uint16_t>(spec.hand_depth + kTorsoGap +
                                                        pixel_hash(x, y) % kTorsoSlab);

    if (spec.hands == Hands::one) {
        HandTruth hand;
        hand.label = spec.number;
        hand.side = spec.side;
        render_hand(frame, hand, 320.0, 250.0, spec, 0);
        out.hands.push_back(std::move(hand));
    } else {
        // one hand takes as much as it can (5 for numbers 6..10), the other the rest
        HandTruth left, right;
        left.label = std::min(5, spec.number - 1);
        right.label = spec.number - left.label;
        left.side = HandSide::left;
        right.side = HandSide::right;
        render_hand(frame, left, 190.0, 250.0, spec, 0);
        render_hand(frame, right, 430.0, 250.0, spec, 1);
        out.hands.push_back(std::move(left));
        out.hands.push_back(std::move(right));
    }
    return out;
}

} // namespace signrec
