#include <algorithm>
#include <cmath>

#include "pitch_internal.hpp"
#include "vocarch/dsp.hpp"
#include "vocarch/errors.hpp"
#include "vocarch/pitch.hpp"

namespace vocarch {

using pitch_detail::Candidate;

PitchTrack estimate_ac(const Signal& signal, const FrameGrid& grid,
                       const AcParams& params) {
  const double rate = signal.sample_rate;
  const double window_s = 3.0 / params.range_min_hz;
  const std::size_t window_n =
      static_cast<std::size_t>(std::llround(window_s * rate));
  if (signal.samples.size() < 2 * window_n)
    throw_error(ErrorCode::TooShort,
                "autocorrelation pitch analysis needs at least two windows");

  const std::size_t lag_min = static_cast<std::size_t>(
      std::max(2.0, std::floor(rate / params.range_max_hz)));
  const std::size_t lag_max =
      static_cast<std::size_t>(std::ceil(rate / params.range_min_hz));

  double global_peak = 0.0;
  for (double v : signal.samples) global_peak = std::max(global_peak, std::abs(v));

  const auto window = dsp::hann_window(window_n);
  dsp::Fft fft(dsp::next_fast_size(2 * window_n));

  // lag-domain normalization by the window's own autocorrelation
  std::vector<double> window_ac;
  dsp::autocorrelation(window, lag_max + 1, window_ac, fft);
  for (std::size_t i = 1; i < window_ac.size(); ++i) window_ac[i] /= window_ac[0];
  window_ac[0] = 1.0;

  std::vector<std::vector<Candidate>> candidates(grid.n_frames);
  std::vector<double> frame, r;
  for (std::size_t t = 0; t < grid.n_frames; ++t) {
    extract_frame(signal, grid.center(t), window_n, frame);

    double local_peak = 0.0, mean = 0.0;
    for (double v : frame) mean += v;
    mean /= static_cast<double>(window_n);
    for (auto& v : frame) {
      v -= mean;
      local_peak = std::max(local_peak, std::abs(v));
    }
    for (std::size_t i = 0; i < window_n; ++i) frame[i] *= window[i];

    dsp::autocorrelation(frame, lag_max + 1, r, fft);
    auto& cands = candidates[t];
    cands.push_back(Candidate{
        0.0, pitch_detail::unvoiced_strength(local_peak, global_peak,
                                             params.silence_threshold,
                                             params.voicing_threshold)});
    if (r[0] > 0.0) {
      const double r0 = r[0];
      for (auto& v : r) v /= r0;
      for (std::size_t i = 0; i < r.size(); ++i) {
        // window correction blows up at long lags; those are out of range here
        r[i] = window_ac[i] > 1e-6 ? r[i] / window_ac[i] : 0.0;
      }
      for (std::size_t tau = std::max<std::size_t>(lag_min, 2);
           tau + 1 <= lag_max && tau + 1 < r.size(); ++tau) {
        if (r[tau] > r[tau - 1] && r[tau] >= r[tau + 1] && r[tau] > 0.0) {
          const double offset =
              dsp::parabolic_peak_offset(r[tau - 1], r[tau], r[tau + 1]);
          const double lag = static_cast<double>(tau) + offset;
          const double peak =
              r[tau] - 0.25 * (r[tau - 1] - r[tau + 1]) * offset;
          const double f0 = rate / lag;
          if (f0 < params.range_min_hz || f0 > params.range_max_hz) continue;
          const double strength =
              std::min(peak, 1.0) -
              params.octave_cost *
                  std::log2(params.range_min_hz * lag / rate);
          cands.push_back(Candidate{f0, strength});
        }
      }
      if (cands.size() > static_cast<std::size_t>(params.max_candidates)) {
        std::partial_sort(cands.begin() + 1,
                          cands.begin() + params.max_candidates, cands.end(),
                          [](const Candidate& a, const Candidate& b) {
                            return a.strength > b.strength;
                          });
        cands.resize(params.max_candidates);
      }
    }
  }

  pitch_detail::PathCosts costs{params.octave_jump_cost,
                                params.voiced_unvoiced_cost};
  const auto path = pitch_detail::best_candidate_path(candidates, costs);

  PitchTrack track;
  track.grid = grid;
  track.estimator = PitchEstimatorKind::Ac;
  track.range_min_hz = params.range_min_hz;
  track.range_max_hz = params.range_max_hz;
  track.frames.resize(grid.n_frames);
  for (std::size_t t = 0; t < grid.n_frames; ++t) {
    const auto& chosen = candidates[t][path[t]];
    if (chosen.f0_hz > 0.0) {
      track.frames[t].voiced = true;
      track.frames[t].f0_hz =
          std::clamp(chosen.f0_hz, params.range_min_hz, params.range_max_hz);
    }
  }
  return track;
}

}  // namespace vocarch
