#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mswtc {

// Iterative radix-2 FFT with precomputed twiddle tables. A plan is immutable
// after construction and safe to share across threads; the transforms write
// into caller-owned buffers.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);  // n must be a power of two

    std::size_t size() const { return n_; }

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;  // scales by 1/n

private:
    void transform(std::complex<double>* data, bool inv) const;

    std::size_t n_;
    std::uint32_t log2n_;
    std::vector<std::uint32_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;      // forward
    std::vector<std::complex<double>> twiddle_inv_;  // inverse
};

std::size_t next_pow2(std::size_t n);

// One-shot helpers for arbitrary n (Bluestein when n is not a power of two).
std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x);
std::vector<std::complex<double>> fft_real(std::span<const double> x);

}  // namespace mswtc
