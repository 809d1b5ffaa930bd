#include "specgrad/fft.hpp"

#include <cmath>
#include <numbers>

#include "specgrad/errors.hpp"

namespace specgrad {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t size) : size_(size) {
  if (!is_power_of_two(size)) {
    throw ConfigError("FFT size must be a power of two, got " +
                      std::to_string(size));
  }
  bitrev_.resize(size);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < size) ++log2n;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b) {
      r |= ((i >> b) & 1u) << (log2n - 1 - b);
    }
    bitrev_[i] = r;
  }
  fwd_twiddles_.resize(size / 2);
  inv_twiddles_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) /
                         static_cast<double>(size);
    fwd_twiddles_[k] = {std::cos(angle), -std::sin(angle)};
    inv_twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Fft::transform(std::complex<double>* buf,
                    const std::vector<std::complex<double>>& twiddles) const {
  const std::size_t n = size_;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(buf[i], buf[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const std::complex<double> w = twiddles[j * stride];
        const std::complex<double> u = buf[start + j];
        const std::complex<double> v = buf[start + j + half] * w;
        buf[start + j] = u + v;
        buf[start + j + half] = u - v;
      }
    }
  }
}

void Fft::forward(std::complex<double>* buf) const { transform(buf, fwd_twiddles_); }

void Fft::inverse_unnormalized(std::complex<double>* buf) const {
  transform(buf, inv_twiddles_);
}

}  // namespace specgrad
