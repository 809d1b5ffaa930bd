#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "specgrad/loss.hpp"
#include "specgrad/stft.hpp"
#include "specgrad/waveform.hpp"

namespace specgrad {

struct AdamHyper {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct SgdHyper {
  double lr = 1e-3;
};

struct AdamState {
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  long step = 0;
};

/// One bias-corrected Adam update. Throws DivergenceError on a non-finite
/// gradient.
void adam_step(std::vector<double>& params, const std::vector<double>& grad,
               AdamState& state, const AdamHyper& hyper);

struct ZerosInit {};
struct GaussianNoiseInit {
  std::uint64_t seed = 1;
  double scale = 0.1;
};
struct ProvidedInit {
  Waveform waveform;
};

struct InversionSettings {
  std::variant<AdamHyper, SgdHyper> optimizer = AdamHyper{};
  long max_iters = 20000;
  std::variant<GaussianNoiseInit, ZerosInit, ProvidedInit> init = GaussianNoiseInit{};
  /// Improvement below this over 200 consecutive iterations stops the loop.
  double stop_tol = 0.0;
  long log_every = 100;

  void validate() const;
};

struct TraceRecord {
  long iter = 0;
  double e_amp = 0.0;
  double e_phase = 0.0;
  double e_total = 0.0;
};

struct InversionTrace {
  std::vector<TraceRecord> records;
  Waveform waveform;  // best-loss iterate
  long iterations_run = 0;
  long best_iter = 0;
  double best_loss = 0.0;
  std::string stop_reason;
};

/// Loss diverged to NaN/Inf; carries the trace up to the failure.
class DivergenceError : public Error {
public:
  explicit DivergenceError(const std::string& what, InversionTrace trace = {})
      : Error(what), trace(std::move(trace)) {}
  InversionTrace trace;
};

/// Fits waveform samples to a target spectrogram by gradient descent on the
/// combined spectral loss. Returns the best-loss iterate and the loss trace.
InversionTrace invert(const ComplexSpectrogram& target, const StftOperator& op,
                      const LossWeights& weights,
                      const InversionSettings& settings);

/// 10 log10(sum(ref^2) / sum((ref - est)^2)) in dB, capped at 300.
double snr_db(const Waveform& reference, const Waveform& estimate);

/// Deterministic unit normal deviates (fixed engine + Box-Muller, so traces
/// are reproducible across platforms).
std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed,
                                   double scale);

void write_trace_csv(const InversionTrace& trace, const std::string& path);

}  // namespace specgrad
