#pragma once

#include <cstddef>
#include <vector>

#include "specgrad/common.hpp"
#include "specgrad/stft.hpp"
#include "specgrad/waveform.hpp"

namespace specgrad {

/// Energy + autocorrelation voiced/unvoiced decision per analysis frame.
/// Framing must match the paired StftConfig so flag count equals the
/// spectrogram's frame count.
struct VuvDetectorConfig {
  int frame_length = 400;
  int frame_shift = 16;
  double energy_threshold = 0.05;       // fraction of utterance RMS
  double periodicity_threshold = 0.35;  // normalized autocorrelation peak
  int min_lag = 32;                     // 500 Hz at 16 kHz
  int max_lag = 320;                    // 50 Hz at 16 kHz

  void validate() const;
};

/// A frame is voiced iff its RMS exceeds energy_threshold * utterance RMS
/// and its peak normalized autocorrelation over [min_lag, max_lag] exceeds
/// periodicity_threshold. Deterministic, gain-invariant.
VuvFlags detect_vuv(const Waveform& w, const VuvDetectorConfig& cfg,
                    const StftConfig& stft_cfg);

struct FeedbackResult {
  std::vector<double> samples;  // length fft_size
  bool degenerate = false;      // every bin was under the floor
  double max_imag_residue = 0.0;
};

/// Removes spectral amplitude information from a segment: zero-pad to the
/// FFT size, divide each FFT bin by max(|bin|, kAmplitudeFloor), and invert.
/// Output bins carry unit magnitude (floored bins excepted) with the input
/// phase preserved; the result is real up to rounding.
FeedbackResult feedback_transform(const std::vector<double>& segment,
                                  std::size_t fft_size);

}  // namespace specgrad
