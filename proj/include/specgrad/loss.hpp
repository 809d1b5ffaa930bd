#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "specgrad/common.hpp"
#include "specgrad/stft.hpp"
#include "specgrad/waveform.hpp"

namespace specgrad {

/// Phase-loss weighting: alpha = 0 (amplitude only), alpha = 1 everywhere,
/// or alpha = v_t from per-frame voiced/unvoiced flags.
enum class AlphaScheme { AmplitudeOnly, Uniform, VoicedOnly };

struct LossWeights {
  AlphaScheme scheme = AlphaScheme::Uniform;
  std::optional<VuvFlags> flags;  // required for VoicedOnly

  /// Realized per-frame weight, constant across bins.
  double alpha(std::size_t frame) const;

  /// Throws DimensionError if VoicedOnly flags are missing or have the
  /// wrong frame count.
  void validate(std::size_t num_frames) const;

  /// Realized alpha as a T x K matrix.
  RealMatrix realize(std::size_t num_frames, std::size_t num_bins) const;
};

struct LossBreakdown {
  double e_amp = 0.0;
  double e_phase = 0.0;  // already alpha-weighted
  double e_total = 0.0;
  /// Optional per-frame (amplitude, weighted phase) terms.
  std::optional<std::vector<std::pair<double, double>>> per_frame;
};

enum class GradPath { Fast, Matrix };

/// Sum of squared sample differences.
double waveform_loss(const Waveform& y_hat, const Waveform& y);

/// Sum over bins of (a_hat - a)^2 / 2.
double amplitude_loss(const RealMatrix& a_hat, const RealMatrix& a);

/// Sum over bins of alpha * |1 - exp(i(theta_hat - theta))|^2 / 2, which
/// equals alpha * (1 - cos(theta_hat - theta)).
double phase_loss(const RealMatrix& theta_hat, const RealMatrix& theta,
                  const RealMatrix& alpha);

// -- spectra-level core (shared by the waveform-level API and the
//    inversion loop, which holds a fixed target spectrogram) --

/// Combined loss between a target and a candidate spectrogram. Phase terms
/// at bins where either amplitude is under kAmplitudeFloor contribute zero.
LossBreakdown spectral_loss(const ComplexSpectrogram& hat,
                            const ComplexSpectrogram& cur,
                            const LossWeights& weights,
                            bool want_per_frame = false);

/// Analytic gradient of the combined spectral loss with respect to the
/// candidate's samples. hat/cur must both come from `op`. Floored bins
/// contribute zero (amplitude term: candidate amplitude under the floor;
/// phase term: either amplitude under the floor).
std::vector<double> spectral_grad(const ComplexSpectrogram& hat,
                                  const ComplexSpectrogram& cur,
                                  const StftOperator& op,
                                  const LossWeights& weights,
                                  bool with_amplitude, bool with_phase,
                                  GradPath path = GradPath::Fast);

/// Negative log likelihood of the target spectra under Gaussian amplitude
/// (sigma^2 = 1) and von Mises phase (beta = 1) densities centered on the
/// candidate spectra. Differs from the combined loss by a constant.
double spectral_nll(const ComplexSpectrogram& hat, const ComplexSpectrogram& cur,
                    const LossWeights& weights);

// -- waveform-level API --

LossBreakdown combined_loss(const Waveform& y_hat, const Waveform& y,
                            const StftOperator& op, const LossWeights& weights,
                            bool want_per_frame = false);

std::vector<double> amplitude_grad(const Waveform& y_hat, const Waveform& y,
                                   const StftOperator& op,
                                   GradPath path = GradPath::Fast);

std::vector<double> phase_grad(const Waveform& y_hat, const Waveform& y,
                               const StftOperator& op, const LossWeights& weights,
                               GradPath path = GradPath::Fast);

std::vector<double> combined_grad(const Waveform& y_hat, const Waveform& y,
                                  const StftOperator& op,
                                  const LossWeights& weights,
                                  GradPath path = GradPath::Fast);

double negative_log_likelihood(const Waveform& y_hat, const Waveform& y,
                               const StftOperator& op, const LossWeights& weights);

/// Modified Bessel function of the first kind, order zero, by power series.
double bessel_i0(double beta);

}  // namespace specgrad
