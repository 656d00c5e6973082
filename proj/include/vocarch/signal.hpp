#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace vocarch {

// Which of a segment's two signal variants a track was computed from.
enum class SourceKind { Raw, Separated };
const char* to_string(SourceKind s);

struct Signal {
  std::vector<double> samples;  // normalized to [-1, 1]
  double sample_rate = 0.0;

  double duration_s() const {
    return sample_rate > 0 ? samples.size() / sample_rate : 0.0;
  }
};

// Common 10 ms analysis grid. Frame i is centered at t0_s + i*hop_s; every
// estimator output for a segment must be produced on one shared grid so the
// downstream per-frame fusion is well defined.
struct FrameGrid {
  double hop_s = 0.010;
  double t0_s = 0.005;
  std::size_t n_frames = 0;

  double center(std::size_t i) const { return t0_s + i * hop_s; }
  bool operator==(const FrameGrid&) const = default;
};

FrameGrid make_grid(double duration_s, double hop_s = 0.010);

// Decode a WAV file (mono or first channel) and resample to target_rate.
Signal decode_and_resample(const std::string& path, double target_rate);

Signal resample_signal(const Signal& in, double target_rate);

// Analytic-signal magnitude at the input rate.
Signal hilbert_envelope(const Signal& in);

// One window per grid center; out-of-range regions are zero padded.
std::vector<std::vector<double>> frame_signal(const Signal& in,
                                              const FrameGrid& grid,
                                              double window_s);

// Samples of frame i without copying: fills `frame` (size window_n).
void extract_frame(const Signal& in, double center_s, std::size_t window_n,
                   std::vector<double>& frame);

}  // namespace vocarch
