#include "specgrad/loss.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "specgrad/parallel.hpp"

namespace specgrad {

double LossWeights::alpha(std::size_t frame) const {
  switch (scheme) {
    case AlphaScheme::AmplitudeOnly:
      return 0.0;
    case AlphaScheme::Uniform:
      return 1.0;
    case AlphaScheme::VoicedOnly:
      return flags && frame < flags->flags.size() && flags->flags[frame] ? 1.0 : 0.0;
  }
  return 0.0;
}

void LossWeights::validate(std::size_t num_frames) const {
  if (scheme == AlphaScheme::VoicedOnly) {
    if (!flags) {
      throw DimensionError("VoicedOnly weighting requires voiced/unvoiced flags");
    }
    if (flags->flags.size() != num_frames) {
      throw DimensionError("flag count " + std::to_string(flags->flags.size()) +
                           " does not match frame count " + std::to_string(num_frames));
    }
  }
}

RealMatrix LossWeights::realize(std::size_t num_frames, std::size_t num_bins) const {
  validate(num_frames);
  RealMatrix out(num_frames, num_bins);
  for (std::size_t t = 0; t < num_frames; ++t) {
    const double a = alpha(t);
    for (std::size_t n = 0; n < num_bins; ++n) out.at(t, n) = a;
  }
  return out;
}

double waveform_loss(const Waveform& y_hat, const Waveform& y) {
  if (y_hat.samples.size() != y.samples.size()) {
    throw DimensionError("waveform lengths differ: " +
                         std::to_string(y_hat.samples.size()) + " vs " +
                         std::to_string(y.samples.size()));
  }
  double acc = 0.0;
  for (std::size_t m = 0; m < y.samples.size(); ++m) {
    const double d = y_hat.samples[m] - y.samples[m];
    acc += d * d;
  }
  return acc;
}

double amplitude_loss(const RealMatrix& a_hat, const RealMatrix& a) {
  if (!a_hat.same_shape(a)) {
    throw DimensionError("amplitude matrices have different shapes");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < a.rows; ++t) {
    for (std::size_t n = 0; n < a.cols; ++n) {
      const double d = a_hat.at(t, n) - a.at(t, n);
      acc += 0.5 * d * d;
    }
  }
  return acc;
}

double phase_loss(const RealMatrix& theta_hat, const RealMatrix& theta,
                  const RealMatrix& alpha) {
  if (!theta_hat.same_shape(theta) || !theta_hat.same_shape(alpha)) {
    throw DimensionError("phase matrices have different shapes");
  }
  double acc = 0.0;
  for (std::size_t t = 0; t < theta.rows; ++t) {
    for (std::size_t n = 0; n < theta.cols; ++n) {
      const double d = theta_hat.at(t, n) - theta.at(t, n);
      const std::complex<double> r =
          1.0 - std::complex<double>(std::cos(d), std::sin(d));
      acc += alpha.at(t, n) * 0.5 * std::norm(r);
    }
  }
  return acc;
}

namespace {

void require_matching(const ComplexSpectrogram& hat, const ComplexSpectrogram& cur) {
  if (hat.num_frames != cur.num_frames || hat.num_bins != cur.num_bins ||
      hat.one_sided != cur.one_sided) {
    throw DimensionError("spectrogram shapes differ");
  }
}

void require_matching(const ComplexSpectrogram& spec, const StftOperator& op) {
  if (spec.num_frames != op.num_frames() || spec.num_bins != op.num_bins() ||
      spec.one_sided != op.config().one_sided) {
    throw DimensionError("spectrogram shape does not match operator");
  }
}

}  // namespace

LossBreakdown spectral_loss(const ComplexSpectrogram& hat,
                            const ComplexSpectrogram& cur,
                            const LossWeights& weights, bool want_per_frame) {
  require_matching(hat, cur);
  weights.validate(cur.num_frames);

  const std::size_t frames = cur.num_frames;
  const std::size_t bins = cur.num_bins;
  std::vector<std::pair<double, double>> per_frame(frames, {0.0, 0.0});

  parallel_for(frames, [&](std::size_t t) {
    const double alpha = weights.alpha(t);
    double amp_acc = 0.0;
    double phase_acc = 0.0;
    for (std::size_t n = 0; n < bins; ++n) {
      const std::complex<double> y_hat = hat.at(t, n);
      const std::complex<double> y = cur.at(t, n);
      const double a_hat = std::abs(y_hat);
      const double a = std::abs(y);
      const double da = a_hat - a;
      amp_acc += 0.5 * da * da;
      if (alpha != 0.0 && a >= kAmplitudeFloor && a_hat >= kAmplitudeFloor) {
        // exp(i(theta_hat - theta)) without going through atan2
        const std::complex<double> rot = y_hat * std::conj(y) / (a_hat * a);
        phase_acc += alpha * 0.5 * std::norm(1.0 - rot);
      }
    }
    per_frame[t] = {amp_acc, phase_acc};
  });

  LossBreakdown out;
  for (std::size_t t = 0; t < frames; ++t) {  // ordered reduction
    out.e_amp += per_frame[t].first;
    out.e_phase += per_frame[t].second;
  }
  out.e_total = out.e_amp + out.e_phase;
  if (want_per_frame) out.per_frame = std::move(per_frame);
  return out;
}

double spectral_nll(const ComplexSpectrogram& hat, const ComplexSpectrogram& cur,
                    const LossWeights& weights) {
  require_matching(hat, cur);
  weights.validate(cur.num_frames);

  const double log_2pi = std::log(2.0 * std::numbers::pi);
  const double log_vm_norm = std::log(2.0 * std::numbers::pi * bessel_i0(1.0));

  double acc = 0.0;
  for (std::size_t t = 0; t < cur.num_frames; ++t) {
    const double alpha = weights.alpha(t);
    for (std::size_t n = 0; n < cur.num_bins; ++n) {
      const std::complex<double> y_hat = hat.at(t, n);
      const std::complex<double> y = cur.at(t, n);
      const double a_hat = std::abs(y_hat);
      const double a = std::abs(y);
      const double da = a_hat - a;
      // -log gaussian(a_hat | a, 1)
      acc += 0.5 * log_2pi + 0.5 * da * da;
      if (alpha != 0.0 && a >= kAmplitudeFloor && a_hat >= kAmplitudeFloor) {
        // -alpha log vonmises(theta_hat | theta, 1)
        const double cos_d = (y_hat * std::conj(y)).real() / (a_hat * a);
        acc += alpha * (log_vm_norm - cos_d);
      }
    }
  }
  return acc;
}

namespace {

struct BinCoeffs {
  // amplitude: (A - A_hat) exp(i theta); zero when A is floored
  // phase:     alpha sin(theta_hat - theta) / conj(Y); zero when alpha = 0
  //            or either amplitude is floored
  std::complex<double> amp{0.0, 0.0};
  std::complex<double> phase{0.0, 0.0};
};

BinCoeffs bin_coeffs(const std::complex<double>& y_hat, const std::complex<double>& y,
                     double alpha, bool with_amplitude, bool with_phase) {
  BinCoeffs out;
  const double a_hat = std::abs(y_hat);
  const double a = std::abs(y);
  if (a < kAmplitudeFloor) return out;
  if (with_amplitude) {
    out.amp = (a - a_hat) * (y / a);
  }
  if (with_phase && alpha != 0.0 && a_hat >= kAmplitudeFloor) {
    const double sin_d = (y_hat * std::conj(y)).imag() / (a_hat * a);
    out.phase = alpha * sin_d / std::conj(y);
  }
  return out;
}

}  // namespace

std::vector<double> spectral_grad(const ComplexSpectrogram& hat,
                                  const ComplexSpectrogram& cur,
                                  const StftOperator& op,
                                  const LossWeights& weights,
                                  bool with_amplitude, bool with_phase,
                                  GradPath path) {
  require_matching(hat, cur);
  require_matching(cur, op);
  weights.validate(cur.num_frames);

  const std::size_t frames = cur.num_frames;
  const std::size_t bins = cur.num_bins;
  const std::size_t length = static_cast<std::size_t>(op.config().frame_length);
  const std::size_t shift = static_cast<std::size_t>(op.config().frame_shift);
  const std::size_t big_n = static_cast<std::size_t>(op.config().fft_size);
  const std::size_t m_total = op.signal_length();

  std::vector<double> grad(m_total, 0.0);

  if (path == GradPath::Fast) {
    // Per frame: pack i*amp + phase coefficients into the bin buffer, run one
    // unnormalized inverse FFT, and read the imaginary part. Im(i*c*e) =
    // Re(c*e) recovers the amplitude term, Im(d*e) the phase term, where
    // e = exp(+i 2 pi n l / N) is the conjugated operator entry over the
    // window. Frames land in private buffers; the cross-frame reduction
    // below runs in frame order so results do not depend on the thread count.
    std::vector<std::vector<double>> partial(frames);
    const std::complex<double> imag_unit{0.0, 1.0};
    parallel_for(frames, [&](std::size_t t) {
      const double alpha = weights.alpha(t);
      std::vector<std::complex<double>> buf(big_n, {0.0, 0.0});
      for (std::size_t n = 0; n < bins; ++n) {
        const BinCoeffs c =
            bin_coeffs(hat.at(t, n), cur.at(t, n), alpha, with_amplitude, with_phase);
        buf[n] = imag_unit * c.amp + c.phase;
      }
      op.fft().inverse_unnormalized(buf.data());
      const std::size_t start = t * shift;
      const std::size_t in_frame = start < m_total ? std::min(length, m_total - start) : 0;
      auto& local = partial[t];
      local.resize(in_frame);
      for (std::size_t l = 0; l < in_frame; ++l) {
        local[l] = op.window_at(l) * buf[l].imag();
      }
    });
    for (std::size_t t = 0; t < frames; ++t) {
      const std::size_t start = t * shift;
      for (std::size_t l = 0; l < partial[t].size(); ++l) {
        grad[start + l] += partial[t][l];
      }
    }
    return grad;
  }

  // Literal path: accumulate each bin's contribution with explicitly
  // constructed conjugated row entries.
  for (std::size_t t = 0; t < frames; ++t) {
    const double alpha = weights.alpha(t);
    const std::size_t start = t * shift;
    for (std::size_t n = 0; n < bins; ++n) {
      const BinCoeffs c =
          bin_coeffs(hat.at(t, n), cur.at(t, n), alpha, with_amplitude, with_phase);
      if (c.amp == 0.0 && c.phase == 0.0) continue;
      for (std::size_t l = 0; l < length; ++l) {
        const std::size_t m = start + l;
        if (m >= m_total) break;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) *
                             static_cast<double>(l) / static_cast<double>(big_n);
        const std::complex<double> e{std::cos(angle), std::sin(angle)};
        grad[m] += op.window_at(l) *
                   ((c.amp * e).real() + (c.phase * e).imag());
      }
    }
  }
  return grad;
}

namespace {
std::pair<ComplexSpectrogram, ComplexSpectrogram> spectra_pair(
    const Waveform& y_hat, const Waveform& y, const StftOperator& op) {
  return {stft_fast(op, y_hat), stft_fast(op, y)};
}
}  // namespace

LossBreakdown combined_loss(const Waveform& y_hat, const Waveform& y,
                            const StftOperator& op, const LossWeights& weights,
                            bool want_per_frame) {
  auto [hat, cur] = spectra_pair(y_hat, y, op);
  return spectral_loss(hat, cur, weights, want_per_frame);
}

std::vector<double> amplitude_grad(const Waveform& y_hat, const Waveform& y,
                                   const StftOperator& op, GradPath path) {
  auto [hat, cur] = spectra_pair(y_hat, y, op);
  return spectral_grad(hat, cur, op, LossWeights{AlphaScheme::AmplitudeOnly, {}},
                       /*with_amplitude=*/true, /*with_phase=*/false, path);
}

std::vector<double> phase_grad(const Waveform& y_hat, const Waveform& y,
                               const StftOperator& op, const LossWeights& weights,
                               GradPath path) {
  auto [hat, cur] = spectra_pair(y_hat, y, op);
  return spectral_grad(hat, cur, op, weights, /*with_amplitude=*/false,
                       /*with_phase=*/true, path);
}

std::vector<double> combined_grad(const Waveform& y_hat, const Waveform& y,
                                  const StftOperator& op, const LossWeights& weights,
                                  GradPath path) {
  auto [hat, cur] = spectra_pair(y_hat, y, op);
  return spectral_grad(hat, cur, op, weights, /*with_amplitude=*/true,
                       /*with_phase=*/true, path);
}

double negative_log_likelihood(const Waveform& y_hat, const Waveform& y,
                               const StftOperator& op, const LossWeights& weights) {
  auto [hat, cur] = spectra_pair(y_hat, y, op);
  return spectral_nll(hat, cur, weights);
}

double bessel_i0(double beta) {
  if (beta < 0.0) {
    throw DegenerateInputError("bessel_i0 requires beta >= 0");
  }
  const double half = beta / 2.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    term *= (half / k) * (half / k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

}  // namespace specgrad
