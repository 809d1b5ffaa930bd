#include "specgrad/waveform.hpp"

#include <cmath>

namespace specgrad {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

NormalizeResult normalize(const Waveform& w) {
  const std::size_t m = w.samples.size();
  if (m < 2) {
    throw DegenerateInputError("normalize needs at least 2 samples, got " +
                               std::to_string(m));
  }
  double mean = 0.0;
  for (double x : w.samples) mean += x;
  mean /= static_cast<double>(m);

  double var = 0.0;
  for (double x : w.samples) var += (x - mean) * (x - mean);
  var /= static_cast<double>(m);  // population variance
  const double stddev = std::sqrt(var);
  if (stddev == 0.0) {
    throw DegenerateInputError("cannot normalize a constant signal");
  }

  NormalizeResult out;
  out.mean = mean;
  out.stddev = stddev;
  out.waveform.sample_rate = w.sample_rate;
  out.waveform.samples.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.waveform.samples[i] = (w.samples[i] - mean) / stddev;
  }
  return out;
}

Waveform denormalize(const Waveform& w, double mean, double stddev) {
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    out.samples[i] = w.samples[i] * stddev + mean;
  }
  return out;
}

}  // namespace specgrad
