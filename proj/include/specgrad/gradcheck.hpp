#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "specgrad/common.hpp"
#include "specgrad/stft.hpp"
#include "specgrad/waveform.hpp"

namespace specgrad {

struct FdReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t num_checked = 0;
  std::size_t num_skipped_floor = 0;
};

/// Central finite differences (f(y + h e_m) - f(y - h e_m)) / 2h per
/// coordinate. Independent of every analytic-gradient code path. Throws
/// EvaluationError (with the coordinate) if an evaluation is non-finite.
std::vector<double> fd_gradient(
    const std::function<double(const Waveform&)>& loss_fn, const Waveform& y,
    double h);

/// Compares an analytic gradient against a numeric one. Relative error per
/// coordinate is |a - n| / max(|a|, |n|, 1e-8). Coordinates with skip[m]
/// set count as skipped, not checked.
FdReport check(const std::vector<double>& analytic,
               const std::vector<double>& numeric,
               const std::vector<bool>& skip = {});

/// Marks coordinates whose +-h perturbation brings any candidate-spectrum
/// bin under the amplitude floor (or whose base point already sits there):
/// the loss is non-smooth around such coordinates by the floor convention,
/// so finite differences are not trustworthy at them.
std::vector<bool> floor_crossing_mask(const Waveform& y, const StftOperator& op,
                                      double h, double floor = kAmplitudeFloor);

}  // namespace specgrad
