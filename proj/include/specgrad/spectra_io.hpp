#pragma once

#include <string>

#include "specgrad/stft.hpp"
#include "specgrad/waveform.hpp"

namespace specgrad {

// SPC1 binary layout, all little-endian:
//   bytes 0-3   magic "SPC1"
//   bytes 4-7   u32 frame count T
//   bytes 8-11  u32 bin count K
//   bytes 12-15 u32 flags (bit 0: one-sided)
//   then T*K entries row-major, each two f64 (re, im)

/// Bit-exact for all finite inputs. Throws EvaluationError on non-finite
/// entries.
void write_spectra(const ComplexSpectrogram& spec, const std::string& path);

ComplexSpectrogram read_spectra(const std::string& path);

/// Text flags file: one "0" or "1" per line, LF-terminated.
VuvFlags read_flags(const std::string& path);

void write_flags(const VuvFlags& flags, const std::string& path);

}  // namespace specgrad
