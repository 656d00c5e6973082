#pragma once

#include <string>
#include <vector>

namespace vocarch::wav {

struct WavData {
  std::vector<double> samples;  // first channel, normalized to [-1, 1]
  double sample_rate = 0.0;
};

// PCM WAV: 16/24-bit integer or 32-bit float; mono or first channel taken.
WavData read(const std::string& path);

// 16-bit PCM mono; samples are clipped to [-1, 1].
void write(const std::string& path, const std::vector<double>& samples,
           double sample_rate);

}  // namespace vocarch::wav
