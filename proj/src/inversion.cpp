#include "specgrad/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

namespace specgrad {

namespace {
constexpr long kStallPatience = 200;

bool finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}
}  // namespace

void adam_step(std::vector<double>& params, const std::vector<double>& grad,
               AdamState& state, const AdamHyper& hyper) {
  if (grad.size() != params.size()) {
    throw DimensionError("gradient length does not match parameter length");
  }
  if (!finite(grad)) {
    throw DivergenceError("non-finite gradient in adam_step");
  }
  if (state.m.empty()) state.m.assign(params.size(), 0.0);
  if (state.v.empty()) state.v.assign(params.size(), 0.0);
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw DimensionError("adam state length does not match parameter length");
  }

  state.step += 1;
  const double bc1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = hyper.beta1 * state.m[i] + (1.0 - hyper.beta1) * g;
    state.v[i] = hyper.beta2 * state.v[i] + (1.0 - hyper.beta2) * g * g;
    const double m_hat = state.m[i] / bc1;
    const double v_hat = state.v[i] / bc2;
    params[i] -= hyper.lr * m_hat / (std::sqrt(v_hat) + hyper.eps);
  }
}

void InversionSettings::validate() const {
  const double lr = std::holds_alternative<AdamHyper>(optimizer)
                        ? std::get<AdamHyper>(optimizer).lr
                        : std::get<SgdHyper>(optimizer).lr;
  if (lr <= 0.0) throw ConfigError("learning rate must be positive");
  if (const auto* adam = std::get_if<AdamHyper>(&optimizer)) {
    if (adam->beta1 < 0.0 || adam->beta1 >= 1.0 || adam->beta2 < 0.0 ||
        adam->beta2 >= 1.0) {
      throw ConfigError("adam betas must lie in [0, 1)");
    }
    if (adam->eps <= 0.0) throw ConfigError("adam eps must be positive");
  }
  if (max_iters < 0) throw ConfigError("max_iters must be >= 0");
  if (stop_tol < 0.0) throw ConfigError("stop_tol must be >= 0");
  if (log_every < 1) throw ConfigError("log_every must be >= 1");
}

std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng]() {
    // 53-bit mantissa draw in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<double> out(n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    out[i] = scale * r * std::cos(2.0 * std::numbers::pi * u2);
    out[i + 1] = scale * r * std::sin(2.0 * std::numbers::pi * u2);
  }
  if (n % 2 == 1) {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    out[n - 1] = scale * std::sqrt(-2.0 * std::log(u1)) *
                 std::cos(2.0 * std::numbers::pi * u2);
  }
  return out;
}

InversionTrace invert(const ComplexSpectrogram& target, const StftOperator& op,
                      const LossWeights& weights,
                      const InversionSettings& settings) {
  settings.validate();
  weights.validate(op.num_frames());
  if (target.num_frames != op.num_frames() || target.num_bins != op.num_bins() ||
      target.one_sided != op.config().one_sided) {
    throw DimensionError("target spectrogram shape does not match operator");
  }

  const std::size_t m_total = op.signal_length();
  Waveform y;
  y.samples.assign(m_total, 0.0);
  if (const auto* noise = std::get_if<GaussianNoiseInit>(&settings.init)) {
    y.samples = gaussian_noise(m_total, noise->seed, noise->scale);
  } else if (const auto* provided = std::get_if<ProvidedInit>(&settings.init)) {
    if (provided->waveform.samples.size() != m_total) {
      throw DimensionError("provided init length does not match operator");
    }
    y = provided->waveform;
  }

  InversionTrace trace;
  trace.best_loss = std::numeric_limits<double>::infinity();

  AdamState adam_state;
  const bool use_adam = std::holds_alternative<AdamHyper>(settings.optimizer);
  long since_improvement = 0;

  for (long iter = 0;; ++iter) {
    const ComplexSpectrogram cur = stft_fast(op, y);
    const LossBreakdown loss = spectral_loss(target, cur, weights);
    if (!std::isfinite(loss.e_total)) {
      trace.stop_reason = "diverged";
      throw DivergenceError("loss diverged at iteration " + std::to_string(iter),
                            trace);
    }

    if (loss.e_total < trace.best_loss) {
      if (trace.best_loss - loss.e_total > settings.stop_tol) {
        since_improvement = 0;
      } else {
        ++since_improvement;
      }
      trace.best_loss = loss.e_total;
      trace.best_iter = iter;
      trace.waveform = y;
    } else {
      ++since_improvement;
    }

    const bool converged = loss.e_total == 0.0;
    const bool out_of_iters = iter >= settings.max_iters;
    const bool stalled = since_improvement >= kStallPatience;
    if (iter % settings.log_every == 0 || converged || out_of_iters || stalled) {
      trace.records.push_back({iter, loss.e_amp, loss.e_phase, loss.e_total});
    }
    trace.iterations_run = iter;
    if (converged) {
      trace.stop_reason = "converged";
      break;
    }
    if (out_of_iters) {
      trace.stop_reason = "max_iters";
      break;
    }
    if (stalled) {
      trace.stop_reason = "stalled";
      break;
    }

    const std::vector<double> grad = spectral_grad(
        target, cur, op, weights, /*with_amplitude=*/true, /*with_phase=*/true);
    if (!finite(grad)) {
      trace.stop_reason = "diverged";
      throw DivergenceError("gradient diverged at iteration " + std::to_string(iter),
                            trace);
    }
    if (use_adam) {
      adam_step(y.samples, grad, adam_state, std::get<AdamHyper>(settings.optimizer));
    } else {
      const double lr = std::get<SgdHyper>(settings.optimizer).lr;
      for (std::size_t i = 0; i < y.samples.size(); ++i) {
        y.samples[i] -= lr * grad[i];
      }
    }
  }
  return trace;
}

double snr_db(const Waveform& reference, const Waveform& estimate) {
  if (reference.samples.size() != estimate.samples.size()) {
    throw DimensionError("snr operands have different lengths");
  }
  double ref_energy = 0.0;
  double err_energy = 0.0;
  for (std::size_t i = 0; i < reference.samples.size(); ++i) {
    const double r = reference.samples[i];
    const double d = r - estimate.samples[i];
    ref_energy += r * r;
    err_energy += d * d;
  }
  if (ref_energy == 0.0) {
    throw DegenerateInputError("snr reference has zero energy");
  }
  constexpr double kSnrCapDb = 300.0;
  if (err_energy == 0.0) return kSnrCapDb;
  return std::min(10.0 * std::log10(ref_energy / err_energy), kSnrCapDb);
}

void write_trace_csv(const InversionTrace& trace, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw IoError("cannot open trace file for writing: " + path);
  std::fputs("iter,e_amp,e_phase,e_total\n", f);
  for (const TraceRecord& r : trace.records) {
    std::fprintf(f, "%ld,%.17g,%.17g,%.17g\n", r.iter, r.e_amp, r.e_phase, r.e_total);
  }
  if (std::fclose(f) != 0) throw IoError("failed writing trace file: " + path);
}

}  // namespace specgrad
