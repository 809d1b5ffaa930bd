#include "specgrad/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace specgrad {

std::vector<double> fd_gradient(
    const std::function<double(const Waveform&)>& loss_fn, const Waveform& y,
    double h) {
  if (h <= 0.0) {
    throw ConfigError("fd_gradient step must be positive");
  }
  std::vector<double> grad(y.samples.size(), 0.0);
  Waveform probe = y;
  for (std::size_t m = 0; m < y.samples.size(); ++m) {
    const double saved = probe.samples[m];
    probe.samples[m] = saved + h;
    const double plus = loss_fn(probe);
    probe.samples[m] = saved - h;
    const double minus = loss_fn(probe);
    probe.samples[m] = saved;
    if (!std::isfinite(plus) || !std::isfinite(minus)) {
      throw EvaluationError("non-finite loss while perturbing coordinate " +
                            std::to_string(m));
    }
    grad[m] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

FdReport check(const std::vector<double>& analytic,
               const std::vector<double>& numeric,
               const std::vector<bool>& skip) {
  if (analytic.size() != numeric.size()) {
    throw DimensionError("gradient lengths differ");
  }
  if (!skip.empty() && skip.size() != analytic.size()) {
    throw DimensionError("skip mask length differs");
  }
  FdReport report;
  for (std::size_t m = 0; m < analytic.size(); ++m) {
    if (!skip.empty() && skip[m]) {
      ++report.num_skipped_floor;
      continue;
    }
    ++report.num_checked;
    const double a = analytic[m];
    const double n = numeric[m];
    const double abs_err = std::abs(a - n);
    const double rel_err = abs_err / std::max({std::abs(a), std::abs(n), 1e-8});
    if (rel_err > report.max_rel_error) {
      report.max_rel_error = rel_err;
      report.worst_index = m;
    }
    report.max_abs_error = std::max(report.max_abs_error, abs_err);
  }
  return report;
}

std::vector<bool> floor_crossing_mask(const Waveform& y, const StftOperator& op,
                                      double h, double floor) {
  const std::size_t m_total = y.samples.size();
  std::vector<bool> mask(m_total, false);

  auto min_amplitude = [&](const Waveform& w) {
    const ComplexSpectrogram spec = stft_fast(op, w);
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& v : spec.entries) lo = std::min(lo, std::abs(v));
    return lo;
  };

  // Cheap screen first: bumping one sample by +-h moves any bin by at most
  // h * |W entry| <= h, so if the base spectrum clears the floor by more
  // than h no coordinate can cross.
  const double base_min = min_amplitude(y);
  if (base_min > floor + h) return mask;

  Waveform probe = y;
  for (std::size_t m = 0; m < m_total; ++m) {
    const double saved = probe.samples[m];
    probe.samples[m] = saved + h;
    const double up = min_amplitude(probe);
    probe.samples[m] = saved - h;
    const double down = min_amplitude(probe);
    probe.samples[m] = saved;
    if (up < floor || down < floor || base_min < floor) mask[m] = true;
  }
  return mask;
}

}  // namespace specgrad
