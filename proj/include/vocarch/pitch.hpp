#pragma once

#include <string>
#include <vector>

#include "vocarch/signal.hpp"

namespace vocarch {

enum class PitchEstimatorKind { Ac, NccfDefault, NccfHilbert, Wide };

const char* to_string(PitchEstimatorKind k);

struct PitchFrame {
  bool voiced = false;
  double f0_hz = 0.0;  // meaningful only when voiced
};

struct PitchTrack {
  FrameGrid grid;
  std::vector<PitchFrame> frames;
  PitchEstimatorKind estimator = PitchEstimatorKind::Ac;
  SourceKind source = SourceKind::Raw;
  double range_min_hz = 0.0;
  double range_max_hz = 0.0;
};

// Autocorrelation estimator. Window is 3 periods of range_min; candidates are
// interpolated correlation peaks scored against an unvoiced hypothesis, and
// the track is the cheapest dynamic-programming path through them.
struct AcParams {
  double range_min_hz = 65.0;
  double range_max_hz = 650.0;
  double silence_threshold = 0.03;
  double voicing_threshold = 0.45;
  double octave_cost = 0.01;
  double octave_jump_cost = 0.35;
  double voiced_unvoiced_cost = 0.14;
  int max_candidates = 15;
};

PitchTrack estimate_ac(const Signal& signal, const FrameGrid& grid,
                       const AcParams& params = {});

// Normalized-cross-correlation estimator with a fixed 25 ms window and a
// two-hypothesis (voiced/unvoiced) dynamic-programming decision. The hilbert
// setting runs on the 20 Hz-high-passed analytic envelope instead of the
// waveform, which keeps amplitude-periodic but noise-carried voicing visible.
struct NccfParams {
  double range_min_hz = 40.0;
  double range_max_hz = 500.0;
  double window_s = 0.025;
  double candidate_floor = 0.30;   // NCCF below this is never a candidate
  double silence_threshold = 0.03;
  double voicing_threshold = 0.50;
  double octave_cost = 0.01;
  double octave_jump_cost = 0.35;
  double voiced_unvoiced_cost = 0.14;
  int max_candidates = 10;
};

enum class NccfSetting { Default, Hilbert };

PitchTrack estimate_nccf(const Signal& signal, const FrameGrid& grid,
                         NccfSetting setting, const NccfParams& params = {});

// Wide-range difference-function estimator smoothed by a Viterbi pass over
// quantized log-F0 states (transition cost proportional to the semitone jump).
struct WideParams {
  double range_min_hz = 30.0;
  double range_max_hz = 1000.0;
  double unvoiced_level = 0.20;        // emission cost of the unvoiced state
  double transition_cost_per_st = 0.50;
  double voiced_unvoiced_cost = 0.25;
  double states_per_semitone = 4.0;
};

PitchTrack estimate_wide(const Signal& signal, const FrameGrid& grid,
                         const WideParams& params = {});

// Debug dump described by the per-track CSV contract:
// frame_idx,time_s,voiced,f0_hz,estimator,source
std::string track_to_csv(const PitchTrack& track);

}  // namespace vocarch
