#include "specgrad/preproc.hpp"

#include <algorithm>
#include <cmath>

#include "specgrad/fft.hpp"

namespace specgrad {

void VuvDetectorConfig::validate() const {
  if (frame_length < 1 || frame_shift < 1 || frame_shift > frame_length) {
    throw ConfigError("need 1 <= frame_shift <= frame_length");
  }
  if (energy_threshold <= 0.0 || energy_threshold >= 1.0 ||
      periodicity_threshold <= 0.0 || periodicity_threshold >= 1.0) {
    throw ConfigError("detector thresholds must lie in (0, 1)");
  }
  if (min_lag < 1 || min_lag >= max_lag || max_lag >= frame_length) {
    throw ConfigError("need 1 <= min_lag < max_lag < frame_length");
  }
}

VuvFlags detect_vuv(const Waveform& w, const VuvDetectorConfig& cfg,
                    const StftConfig& stft_cfg) {
  cfg.validate();
  stft_cfg.validate();
  if (cfg.frame_length != stft_cfg.frame_length ||
      cfg.frame_shift != stft_cfg.frame_shift) {
    throw DimensionError("detector framing does not match the analysis framing");
  }
  const std::size_t m_total = w.samples.size();
  if (m_total < 1) throw DegenerateInputError("empty waveform");

  const std::size_t length = static_cast<std::size_t>(cfg.frame_length);
  const std::size_t shift = static_cast<std::size_t>(cfg.frame_shift);
  const std::size_t frames = (m_total + shift - 1) / shift;

  double utt_energy = 0.0;
  for (double x : w.samples) utt_energy += x * x;
  const double utt_rms = std::sqrt(utt_energy / static_cast<double>(m_total));

  VuvFlags out;
  out.flags.resize(frames, 0);
  std::vector<double> frame(length);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * shift;
    for (std::size_t l = 0; l < length; ++l) {
      const std::size_t m = start + l;
      frame[l] = m < m_total ? w.samples[m] : 0.0;  // same padding as the STFT
    }

    double energy = 0.0;
    for (double x : frame) energy += x * x;
    const double rms = std::sqrt(energy / static_cast<double>(length));
    if (utt_rms == 0.0 || rms <= cfg.energy_threshold * utt_rms) continue;

    double peak = 0.0;
    for (std::size_t lag = static_cast<std::size_t>(cfg.min_lag);
         lag <= static_cast<std::size_t>(cfg.max_lag); ++lag) {
      const std::size_t overlap = length - lag;
      double cross = 0.0, head = 0.0, tail = 0.0;
      for (std::size_t l = 0; l < overlap; ++l) {
        cross += frame[l] * frame[l + lag];
        head += frame[l] * frame[l];
        tail += frame[l + lag] * frame[l + lag];
      }
      if (head > 0.0 && tail > 0.0) {
        peak = std::max(peak, cross / std::sqrt(head * tail));
      }
    }
    if (peak > cfg.periodicity_threshold) out.flags[t] = 1;
  }
  return out;
}

FeedbackResult feedback_transform(const std::vector<double>& segment,
                                  std::size_t fft_size) {
  if (segment.empty()) throw DegenerateInputError("empty segment");
  if (segment.size() > fft_size) {
    throw DimensionError("segment length " + std::to_string(segment.size()) +
                         " exceeds FFT size " + std::to_string(fft_size));
  }
  const Fft fft(fft_size);

  std::vector<std::complex<double>> buf(fft_size, {0.0, 0.0});
  for (std::size_t i = 0; i < segment.size(); ++i) buf[i] = segment[i];
  fft.forward(buf.data());

  bool all_floored = true;
  for (auto& bin : buf) {
    const double mag = std::abs(bin);
    if (mag >= kAmplitudeFloor) all_floored = false;
    bin /= std::max(mag, kAmplitudeFloor);
  }
  fft.inverse_unnormalized(buf.data());

  FeedbackResult out;
  out.degenerate = all_floored;
  out.samples.resize(fft_size);
  const double inv_n = 1.0 / static_cast<double>(fft_size);
  for (std::size_t i = 0; i < fft_size; ++i) {
    out.samples[i] = buf[i].real() * inv_n;
    out.max_imag_residue = std::max(out.max_imag_residue,
                                    std::abs(buf[i].imag()) * inv_n);
  }
  return out;
}

}  // namespace specgrad
