#pragma once

namespace specgrad {

/// Amplitude floor below which a bin's phase is treated as undefined.
/// Phase loss terms and both gradients skip such bins; the feedback
/// transform divides by this floor instead of the true magnitude.
/// Stated on the normalized-signal scale.
inline constexpr double kAmplitudeFloor = 1e-8;

}  // namespace specgrad
