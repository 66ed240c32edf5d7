#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "signrec/geometry.hpp"

namespace signrec {

// Depth layers run 0..4095; 0 means "no reading" and is ignored downstream.
inline constexpr std::uint16_t kMaxDepth = 4095;

struct DepthFrame {
    int width = 640;
    int height = 480;
    std::vector<std::uint16_t> depths; // row-major, top-left origin

    DepthFrame() : depths(static_cast<std::size_t>(width) * height, 0) {}
    DepthFrame(int w, int h) : width(w), height(h), depths(static_cast<std::size_t>(w) * h, 0) {}

    std::uint16_t at(int x, int y) const { return depths[static_cast<std::size_t>(y) * width + x]; }
    std::uint16_t& at(int x, int y) { return depths[static_cast<std::size_t>(y) * width + x]; }

    // depths length and range invariants; throws Error on violation
    void validate() const;
};

enum class FrameFormat { dfr, pgm };

DepthFrame read_frame(const std::string& path);
void write_frame(const DepthFrame& frame, const std::string& path, FrameFormat format);

enum class Hands { one, two };
enum class HandSide { left, right };

struct SynthSpec {
    int number = 1;                    // gesture label 1-10
    Hands hands = Hands::one;
    std::uint32_t seed = 0;
    double jitter = 0.0;               // shape perturbation magnitude, pixels
    int hand_depth = 800;              // depth layer of the hand surface
    int palm_radius = 60;              // pixels
    HandSide side = HandSide::right;   // which hand geometry when hands == one
};

struct HandTruth {
    int label = 0;                     // finger count shown by this hand, 1-5
    HandSide side = HandSide::right;
    std::vector<Pixel> pixels;         // exact pixel set rendered for this hand
    Centroid centroid;
};

struct SynthFrame {
    DepthFrame frame;
    std::vector<HandTruth> hands;      // left hand first when two
    int number = 0;
};

// Deterministic synthetic gesture frame: filled palm disk plus finger
// capsules per hand at hand_depth, torso slab at hand_depth + 450.
SynthFrame synth_frame(const SynthSpec& spec);

} // namespace signrec
