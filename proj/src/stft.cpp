#include "specgrad/stft.hpp"

#include <cmath>
#include <numbers>

#include "specgrad/parallel.hpp"

namespace specgrad {

void StftConfig::validate() const {
  if (frame_shift < 1 || frame_shift > frame_length || frame_length > fft_size) {
    throw ConfigError("need 1 <= frame_shift <= frame_length <= fft_size, got shift=" +
                      std::to_string(frame_shift) + " length=" +
                      std::to_string(frame_length) + " fft=" + std::to_string(fft_size));
  }
  if (!is_power_of_two(static_cast<std::size_t>(fft_size))) {
    throw ConfigError("fft_size must be a power of two, got " +
                      std::to_string(fft_size));
  }
}

namespace {
std::vector<double> make_window(Window window, std::size_t length) {
  std::vector<double> w(length, 1.0);
  if (window == Window::Hann) {
    // periodic Hann
    for (std::size_t l = 0; l < length; ++l) {
      w[l] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(l) /
                                  static_cast<double>(length));
    }
  }
  return w;
}
}  // namespace

StftOperator::StftOperator(const StftConfig& config, std::size_t signal_length)
    : config_(config), signal_length_(signal_length) {
  config_.validate();
  if (signal_length_ < 1) {
    throw ConfigError("signal length must be >= 1");
  }
  const std::size_t shift = static_cast<std::size_t>(config_.frame_shift);
  num_frames_ = (signal_length_ + shift - 1) / shift;  // ceil(M / S)
  window_ = make_window(config_.window, static_cast<std::size_t>(config_.frame_length));
  fft_ = std::make_shared<Fft>(static_cast<std::size_t>(config_.fft_size));
}

std::vector<std::complex<double>> StftOperator::row(std::size_t t, std::size_t n) const {
  if (t >= num_frames_ || n >= num_bins()) {
    throw DimensionError("operator row index out of range");
  }
  std::vector<std::complex<double>> out(signal_length_, {0.0, 0.0});
  const std::size_t start = t * static_cast<std::size_t>(config_.frame_shift);
  const std::size_t big_n = static_cast<std::size_t>(config_.fft_size);
  for (std::size_t l = 0; l < static_cast<std::size_t>(config_.frame_length); ++l) {
    const std::size_t m = start + l;
    if (m >= signal_length_) break;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(n) *
                         static_cast<double>(l) / static_cast<double>(big_n);
    out[m] = window_[l] * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return out;
}

ComplexSpectrogram stft_matrix(const StftOperator& op, const Waveform& y) {
  if (y.samples.size() != op.signal_length()) {
    throw DimensionError("signal length " + std::to_string(y.samples.size()) +
                         " does not match operator length " +
                         std::to_string(op.signal_length()));
  }
  const std::size_t frames = op.num_frames();
  const std::size_t bins = op.num_bins();
  ComplexSpectrogram spec(frames, bins, op.config().one_sided);
  for (std::size_t t = 0; t < frames; ++t) {
    for (std::size_t n = 0; n < bins; ++n) {
      const auto w_row = op.row(t, n);
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t m = 0; m < w_row.size(); ++m) {
        acc += w_row[m] * y.samples[m];
      }
      spec.at(t, n) = acc;
    }
  }
  return spec;
}

ComplexSpectrogram stft_fast(const StftOperator& op, const Waveform& y) {
  if (y.samples.size() != op.signal_length()) {
    throw DimensionError("signal length " + std::to_string(y.samples.size()) +
                         " does not match operator length " +
                         std::to_string(op.signal_length()));
  }
  const std::size_t frames = op.num_frames();
  const std::size_t bins = op.num_bins();
  const std::size_t length = static_cast<std::size_t>(op.config().frame_length);
  const std::size_t shift = static_cast<std::size_t>(op.config().frame_shift);
  const std::size_t big_n = static_cast<std::size_t>(op.config().fft_size);
  const std::size_t m_total = op.signal_length();

  ComplexSpectrogram spec(frames, bins, op.config().one_sided);
  parallel_for(frames, [&](std::size_t t) {
    std::vector<std::complex<double>> buf(big_n, {0.0, 0.0});
    const std::size_t start = t * shift;
    for (std::size_t l = 0; l < length; ++l) {
      const std::size_t m = start + l;
      if (m >= m_total) break;
      buf[l] = op.window_at(l) * y.samples[m];
    }
    op.fft().forward(buf.data());
    for (std::size_t n = 0; n < bins; ++n) {
      spec.at(t, n) = buf[n];
    }
  });
  return spec;
}

AmpPhase amp_phase(const ComplexSpectrogram& spec) {
  AmpPhase out;
  out.amplitudes = RealMatrix(spec.num_frames, spec.num_bins);
  out.phases = RealMatrix(spec.num_frames, spec.num_bins);
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    const std::complex<double> v = spec.entries[i];
    const double a = std::abs(v);
    out.amplitudes.data[i] = a;
    if (a == 0.0) {
      out.phases.data[i] = 0.0;
    } else {
      double theta = std::atan2(v.imag(), v.real());
      if (theta == -std::numbers::pi) theta = std::numbers::pi;  // keep (-pi, pi]
      out.phases.data[i] = theta;
    }
  }
  return out;
}

}  // namespace specgrad
