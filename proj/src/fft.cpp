#include "mswtc/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mswtc {

namespace {

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (!is_pow2(n)) throw std::invalid_argument("FftPlan: size must be a power of two");
    log2n_ = 0;
    while ((std::size_t{1} << log2n_) < n) ++log2n_;

    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t r = 0;
        std::size_t x = i;
        for (std::uint32_t b = 0; b < log2n_; ++b) {
            r = (r << 1) | static_cast<std::uint32_t>(x & 1);
            x >>= 1;
        }
        bitrev_[i] = r;
    }

    // twiddle_[half + j] = exp(-2*pi*i*j / (2*half)) for each stage size
    twiddle_.resize(n);
    twiddle_inv_.resize(n);
    for (std::size_t half = 1; half < n; half <<= 1) {
        for (std::size_t j = 0; j < half; ++j) {
            double ang = -std::numbers::pi * static_cast<double>(j) / static_cast<double>(half);
            twiddle_[half + j] = {std::cos(ang), std::sin(ang)};
            twiddle_inv_[half + j] = {std::cos(ang), -std::sin(ang)};
        }
    }
}

void FftPlan::transform(std::complex<double>* a, bool inv) const {
    const auto& tw = inv ? twiddle_inv_ : twiddle_;
    for (std::size_t i = 0; i < n_; ++i) {
        std::uint32_t j = bitrev_[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t half = 1; half < n_; half <<= 1) {
        const std::complex<double>* w = tw.data() + half;
        for (std::size_t start = 0; start < n_; start += 2 * half) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> u = a[start + j];
                std::complex<double> v = a[start + j + half] * w[j];
                a[start + j] = u + v;
                a[start + j + half] = u - v;
            }
        }
    }
}

void FftPlan::forward(std::complex<double>* data) const {
    transform(data, false);
}

void FftPlan::inverse(std::complex<double>* data) const {
    transform(data, true);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] *= scale;
}

namespace {

// Bluestein's chirp-z, reduces length-n DFT to a power-of-two convolution
std::vector<std::complex<double>> bluestein(std::span<const std::complex<double>> x, bool inv) {
    const std::size_t n = x.size();
    const std::size_t m = next_pow2(2 * n - 1);
    const double sign = inv ? 1.0 : -1.0;

    std::vector<std::complex<double>> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        // angle = sign * pi * k^2 / n, with k^2 reduced mod 2n to keep precision
        std::size_t k2 = (k * k) % (2 * n);
        double ang = sign * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp[k] = {std::cos(ang), std::sin(ang)};
    }

    std::vector<std::complex<double>> a(m), b(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

    FftPlan plan(m);
    plan.forward(a.data());
    plan.forward(b.data());
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    plan.inverse(a.data());

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    if (inv) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : out) v *= scale;
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> fft(std::span<const std::complex<double>> x) {
    if (x.empty()) return {};
    if (is_pow2(x.size())) {
        std::vector<std::complex<double>> out(x.begin(), x.end());
        FftPlan(out.size()).forward(out.data());
        return out;
    }
    return bluestein(x, false);
}

std::vector<std::complex<double>> ifft(std::span<const std::complex<double>> x) {
    if (x.empty()) return {};
    if (is_pow2(x.size())) {
        std::vector<std::complex<double>> out(x.begin(), x.end());
        FftPlan(out.size()).inverse(out.data());
        return out;
    }
    return bluestein(x, true);
}

std::vector<std::complex<double>> fft_real(std::span<const double> x) {
    std::vector<std::complex<double>> cx(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) cx[i] = {x[i], 0.0};
    return fft(cx);
}

}  // namespace mswtc
