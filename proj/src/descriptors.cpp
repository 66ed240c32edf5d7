#include "signrec/descriptors.hpp"

#include <cmath>

#include "signrec/error.hpp"

namespace signrec {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

} // namespace

Spectrum fft(const std::vector<std::complex<double>>& signal) {
    const std::size_t n = signal.size();
    if (!power_of_two(n))
        throw Error(Errc::not_power_of_two, "FFT length must be a power of two >= 2");

    Spectrum x = signal;
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    // twiddle table for the full length; stage twiddles are strided lookups
    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k)
        twiddle[k] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(n));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t block = 0; block < n; block += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> t = twiddle[k * stride] * x[block + k + half];
                const std::complex<double> u = x[block + k];
                x[block + k] = u + t;
                x[block + k + half] = u - t;
            }
        }
    }
    return x;
}

Spectrum fft(const std::vector<double>& signal) {
    std::vector<std::complex<double>> complex_signal(signal.begin(), signal.end());
    return fft(complex_signal);
}

std::vector<double> centroid_distance_signature(const SampledBoundary& boundary) {
    return boundary.radii;
}

FourierDescriptor descriptor(const std::vector<double>& signature, int count) {
    const std::size_t n = signature.size();
    if (!power_of_two(n))
        throw Error(Errc::not_power_of_two, "signature length must be a power of two");
    if (count < 1 || n <= 2 * static_cast<std::size_t>(count))
        throw Error(Errc::invalid_spec, "signature too short for the coefficient count");

    const Spectrum spectrum = fft(signature);
    const double dc = std::abs(spectrum[0]);
    if (dc == 0.0)
        throw Error(Errc::zero_dc, "all-zero signature has no DC component");

    FourierDescriptor fd;
    fd.coefficients.reserve(count);
    for (int k = 1; k <= count; ++k)
        fd.coefficients.push_back(std::abs(spectrum[k]) / dc);
    return fd;
}

} // namespace signrec
