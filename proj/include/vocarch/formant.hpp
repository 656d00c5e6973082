#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vocarch/corpus.hpp"
#include "vocarch/signal.hpp"

namespace vocarch {

struct FormantFrame {
  std::array<std::optional<double>, 4> f;  // F1..F4 in Hz, ascending
  std::array<std::optional<double>, 4> b;  // bandwidths in Hz

  bool complete() const {
    return f[0] && f[1] && f[2] && f[3];
  }
};

struct FormantConfig {
  double ceiling_hz = 5500.0;
  int n_formants_to_track = 5;
  double window_s = 0.025;
  double pre_emphasis_from_hz = 50.0;
  double max_bandwidth_hz = 700.0;  // spurious-root rejection
};

// Gender presets: F -> 5.5 kHz ceiling, M -> 5 kHz, both tracking 5 formants.
FormantConfig config_for_gender(Gender gender);
// The 6-formant / 5.5 kHz alternative configuration.
FormantConfig six_formant_config();

// Burg linear prediction of order 2*n_formants_to_track per frame; roots of
// the prediction polynomial inside (50 Hz, ceiling-50 Hz) with bandwidth
// under the cutoff populate F1..F4 ascending (missing slots stay empty).
// The signal is resampled to 2*ceiling internally when needed.
std::vector<FormantFrame> estimate_formants(const Signal& signal,
                                            const FrameGrid& grid,
                                            const FormantConfig& config);

// Debug dump: frame_idx,time_s,f1..f4,b1..b4,source
std::string formants_to_csv(const std::vector<FormantFrame>& frames,
                            const FrameGrid& grid, SourceKind source);

}  // namespace vocarch
