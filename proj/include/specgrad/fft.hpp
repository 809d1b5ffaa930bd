#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace specgrad {

bool is_power_of_two(std::size_t n);

/// Radix-2 FFT plan for a fixed power-of-two size. Twiddle factors and the
/// bit-reversal permutation are precomputed once so repeated transforms of
/// the same size stay cheap.
class Fft {
public:
  explicit Fft(std::size_t size);

  std::size_t size() const { return size_; }

  /// In-place DFT with kernel e^{-i 2 pi n k / N}, no scaling.
  void forward(std::complex<double>* buf) const;

  /// In-place sum over e^{+i 2 pi n k / N}, no 1/N scaling.
  void inverse_unnormalized(std::complex<double>* buf) const;

private:
  void transform(std::complex<double>* buf,
                 const std::vector<std::complex<double>>& twiddles) const;

  std::size_t size_;
  std::vector<std::size_t> bitrev_;
  std::vector<std::complex<double>> fwd_twiddles_;  // e^{-i 2 pi k / N}, k < N/2
  std::vector<std::complex<double>> inv_twiddles_;  // e^{+i 2 pi k / N}, k < N/2
};

}  // namespace specgrad
