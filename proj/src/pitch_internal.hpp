#pragma once

#include <vector>

namespace vocarch::pitch_detail {

struct Candidate {
  double f0_hz = 0.0;  // 0 = unvoiced hypothesis
  double strength = 0.0;
};

struct PathCosts {
  double octave_jump_cost = 0.35;
  double voiced_unvoiced_cost = 0.14;
};

// Minimum-cost path through per-frame candidate sets; emission cost is
// -strength, transitions per PathCosts. Returns one candidate index per frame.
std::vector<int> best_candidate_path(
    const std::vector<std::vector<Candidate>>& candidates,
    const PathCosts& costs);

// Boersma-style unvoiced strength: quiet frames (local peak small against the
// global peak) push this above any correlation peak.
double unvoiced_strength(double local_peak, double global_peak,
                         double silence_threshold, double voicing_threshold);

}  // namespace vocarch::pitch_detail
