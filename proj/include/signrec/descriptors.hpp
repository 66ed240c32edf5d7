#pragma once

#include <complex>
#include <vector>

#include "signrec/contour.hpp"

namespace signrec {

// Unnormalized forward transform: F[k] = sum_t x[t] * exp(-2*pi*i*k*t/N).
using Spectrum = std::vector<std::complex<double>>;

// Radix-2 decimation-in-time Cooley-Tukey; N must be a power of two >= 2.
Spectrum fft(const std::vector<std::complex<double>>& signal);
Spectrum fft(const std::vector<double>& signal);

// The sampled radii are already the centroid distance function r(t); exposed
// as an operation so alternative signatures can slot in.
std::vector<double> centroid_distance_signature(const SampledBoundary& boundary);

// Normalized spectral magnitudes |F[k]| / |F[0]| for k = 1..count; scale,
// translation and start-point invariant.
struct FourierDescriptor {
    std::vector<double> coefficients;
};

inline constexpr int kDescriptorCoefficients = 15;

FourierDescriptor descriptor(const std::vector<double>& signature,
                             int count = kDescriptorCoefficients);

} // namespace signrec
