#pragma once

#include <cstddef>
#include <string>

#include "specgrad/waveform.hpp"

namespace specgrad {

/// Reads a RIFF/WAVE file (PCM mono 16-bit). Samples are scaled to
/// [-1, 1) by division by 32768.
Waveform read_wav(const std::string& path);

/// Writes PCM mono 16-bit with round-to-nearest quantization. Samples
/// outside [-1, 1] are clipped; returns how many were.
std::size_t write_wav(const Waveform& w, const std::string& path);

}  // namespace specgrad
