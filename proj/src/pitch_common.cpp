#include "pitch_internal.hpp"

#include <cmath>
#include <limits>

#include "vocarch/pitch.hpp"
#include "vocarch/csv.hpp"

namespace vocarch::pitch_detail {

double unvoiced_strength(double local_peak, double global_peak,
                         double silence_threshold, double voicing_threshold) {
  if (global_peak <= 0.0) return voicing_threshold + 2.0;
  const double relative = (local_peak / global_peak) /
                          (silence_threshold / (1.0 + voicing_threshold));
  return voicing_threshold + std::max(0.0, 2.0 - relative);
}

std::vector<int> best_candidate_path(
    const std::vector<std::vector<Candidate>>& candidates,
    const PathCosts& costs) {
  const std::size_t n = candidates.size();
  std::vector<int> path(n, 0);
  if (n == 0) return path;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> total(n);
  std::vector<std::vector<int>> back(n);

  for (std::size_t c = 0; c < candidates[0].size(); ++c)
    total[0].push_back(-candidates[0][c].strength);
  back[0].assign(candidates[0].size(), -1);

  for (std::size_t t = 1; t < n; ++t) {
    const auto& prev = candidates[t - 1];
    const auto& cur = candidates[t];
    total[t].assign(cur.size(), kInf);
    back[t].assign(cur.size(), 0);
    for (std::size_t j = 0; j < cur.size(); ++j) {
      double best = kInf;
      int best_i = 0;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        double trans;
        const bool pv = prev[i].f0_hz > 0.0;
        const bool cv = cur[j].f0_hz > 0.0;
        if (pv && cv)
          trans = costs.octave_jump_cost *
                  std::abs(std::log2(prev[i].f0_hz / cur[j].f0_hz));
        else if (pv != cv)
          trans = costs.voiced_unvoiced_cost;
        else
          trans = 0.0;
        const double cost = total[t - 1][i] + trans;
        if (cost < best) {
          best = cost;
          best_i = static_cast<int>(i);
        }
      }
      total[t][j] = best - cur[j].strength;
      back[t][j] = best_i;
    }
  }

  // backtrack from the cheapest terminal candidate
  double best = kInf;
  int idx = 0;
  for (std::size_t j = 0; j < total[n - 1].size(); ++j) {
    if (total[n - 1][j] < best) {
      best = total[n - 1][j];
      idx = static_cast<int>(j);
    }
  }
  for (std::size_t t = n; t-- > 0;) {
    path[t] = idx;
    if (t > 0) idx = back[t][idx];
  }
  return path;
}

}  // namespace vocarch::pitch_detail

namespace vocarch {

const char* to_string(PitchEstimatorKind k) {
  switch (k) {
    case PitchEstimatorKind::Ac: return "ac";
    case PitchEstimatorKind::NccfDefault: return "nccf";
    case PitchEstimatorKind::NccfHilbert: return "nccf_hilbert";
    case PitchEstimatorKind::Wide: return "wide";
  }
  return "?";
}

std::string track_to_csv(const PitchTrack& track) {
  std::string out = "frame_idx,time_s,voiced,f0_hz,estimator,source\n";
  for (std::size_t i = 0; i < track.frames.size(); ++i) {
    const auto& f = track.frames[i];
    out += std::to_string(i);
    out += ',';
    out += csv::format_double(track.grid.center(i), 3);
    out += ',';
    out += f.voiced ? '1' : '0';
    out += ',';
    out += f.voiced ? csv::format_double(f.f0_hz, 3) : std::string();
    out += ',';
    out += to_string(track.estimator);
    out += ',';
    out += to_string(track.source);
    out += '\n';
  }
  return out;
}

}  // namespace vocarch
