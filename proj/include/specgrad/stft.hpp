#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "specgrad/errors.hpp"
#include "specgrad/fft.hpp"
#include "specgrad/waveform.hpp"

namespace specgrad {

enum class Window { Rectangular, Hann };

/// Analysis parameters defining the linear STFT operator.
struct StftConfig {
  int frame_length = 400;
  int frame_shift = 16;
  int fft_size = 512;
  Window window = Window::Rectangular;
  bool one_sided = true;

  int num_bins() const { return one_sided ? fft_size / 2 + 1 : fft_size; }

  /// Throws ConfigError unless 1 <= shift <= length <= fft_size and the
  /// FFT size is a power of two.
  void validate() const;
};

/// Dense real matrix, row-major.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  bool same_shape(const RealMatrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

/// T x K complex STFT matrix.
struct ComplexSpectrogram {
  std::size_t num_frames = 0;
  std::size_t num_bins = 0;
  bool one_sided = true;
  std::vector<std::complex<double>> entries;  // row-major

  ComplexSpectrogram() = default;
  ComplexSpectrogram(std::size_t t, std::size_t k, bool one_sided_)
      : num_frames(t), num_bins(k), one_sided(one_sided_), entries(t * k) {}

  std::complex<double>& at(std::size_t t, std::size_t n) {
    return entries[t * num_bins + n];
  }
  std::complex<double> at(std::size_t t, std::size_t n) const {
    return entries[t * num_bins + n];
  }
};

struct AmpPhase {
  RealMatrix amplitudes;  // |Y|
  RealMatrix phases;      // atan2(Im, Re) in (-pi, pi], 0 where |Y| = 0
};

/// The STFT of an M-sample signal as a linear operator: T = ceil(M / S)
/// frames at shift S, each windowed over L samples (zero-padded past the
/// signal end), then zero-padded from L to the FFT size N.
class StftOperator {
public:
  StftOperator(const StftConfig& config, std::size_t signal_length);

  const StftConfig& config() const { return config_; }
  std::size_t signal_length() const { return signal_length_; }
  std::size_t num_frames() const { return num_frames_; }
  std::size_t num_bins() const { return static_cast<std::size_t>(config_.num_bins()); }

  /// Window value for in-frame position l (0 <= l < frame_length).
  double window_at(std::size_t l) const { return window_[l]; }

  /// Dense row of the operator matrix for (frame, bin): length M, at most
  /// frame_length nonzeros starting at sample t * frame_shift. Reference /
  /// diagnostic surface; the compute paths never materialize rows.
  std::vector<std::complex<double>> row(std::size_t t, std::size_t n) const;

  const Fft& fft() const { return *fft_; }

private:
  StftConfig config_;
  std::size_t signal_length_ = 0;
  std::size_t num_frames_ = 0;
  std::vector<double> window_;
  std::shared_ptr<const Fft> fft_;
};

/// Reference path: explicit row dot products (naive per-frame DFT).
ComplexSpectrogram stft_matrix(const StftOperator& op, const Waveform& y);

/// Fast path: per-frame FFT. Equal to stft_matrix in exact arithmetic.
ComplexSpectrogram stft_fast(const StftOperator& op, const Waveform& y);

/// Amplitude and phase views of a complex spectrogram.
AmpPhase amp_phase(const ComplexSpectrogram& spec);

}  // namespace specgrad
