#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "specgrad/errors.hpp"

namespace specgrad {

/// A mono waveform. Samples are dimensionless after normalization,
/// otherwise PCM-scaled into [-1, 1).
struct Waveform {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
};

/// Per-frame voiced/unvoiced flags (1: voiced, 0: unvoiced).
struct VuvFlags {
  std::vector<std::uint8_t> flags;

  std::size_t frame_count() const { return flags.size(); }
};

struct NormalizeResult {
  Waveform waveform;
  double mean = 0.0;
  double stddev = 1.0;
};

bool all_finite(const std::vector<double>& v);

/// Shifts and scales the signal to zero mean and unit population variance.
/// Throws DegenerateInputError for constant signals (stddev == 0).
NormalizeResult normalize(const Waveform& w);

/// Inverse of normalize: sample * stddev + mean.
Waveform denormalize(const Waveform& w, double mean, double stddev);

}  // namespace specgrad
