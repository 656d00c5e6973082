#include <algorithm>
#include <cmath>

#include "pitch_internal.hpp"
#include "vocarch/dsp.hpp"
#include "vocarch/errors.hpp"
#include "vocarch/pitch.hpp"

namespace vocarch {

using pitch_detail::Candidate;

namespace {

// one-pole high pass, removes the envelope's DC and drift
void high_pass_iir(std::vector<double>& x, double cutoff_hz, double rate) {
  const double rc = 1.0 / (2.0 * 3.14159265358979323846 * cutoff_hz);
  const double dt = 1.0 / rate;
  const double a = rc / (rc + dt);
  double prev_x = x.empty() ? 0.0 : x[0];
  double prev_y = 0.0;
  for (auto& v : x) {
    const double y = a * (prev_y + v - prev_x);
    prev_x = v;
    prev_y = y;
    v = y;
  }
}

}  // namespace

PitchTrack estimate_nccf(const Signal& signal, const FrameGrid& grid,
                         NccfSetting setting, const NccfParams& params) {
  const double rate = signal.sample_rate;
  const std::size_t window_n =
      static_cast<std::size_t>(std::llround(params.window_s * rate));
  if (signal.samples.size() < 2 * window_n)
    throw_error(ErrorCode::TooShort, "NCCF pitch analysis needs at least two windows");

  Signal work = signal;
  if (setting == NccfSetting::Hilbert) {
    work.samples = dsp::hilbert_envelope(signal.samples);
    high_pass_iir(work.samples, 20.0, rate);
  }

  const std::size_t lag_min = static_cast<std::size_t>(
      std::max(2.0, std::floor(rate / params.range_max_hz)));
  const std::size_t lag_max =
      static_cast<std::size_t>(std::ceil(rate / params.range_min_hz));
  const std::size_t span_n = window_n + lag_max + 1;

  double global_peak = 0.0;
  for (double v : work.samples) global_peak = std::max(global_peak, std::abs(v));

  dsp::Fft fft(dsp::next_fast_size(span_n));

  std::vector<std::vector<Candidate>> candidates(grid.n_frames);
  std::vector<double> span, num, energy_prefix;
  for (std::size_t t = 0; t < grid.n_frames; ++t) {
    // span covers the analysis window plus all lags, centered on the frame
    extract_frame(work, grid.center(t) + (lag_max * 0.5) / rate, span_n, span);

    double mean = 0.0;
    for (double v : span) mean += v;
    mean /= static_cast<double>(span_n);
    double local_peak = 0.0;
    for (auto& v : span) {
      v -= mean;
      local_peak = std::max(local_peak, std::abs(v));
    }

    dsp::windowed_correlation(span, window_n, lag_max, num, fft);

    energy_prefix.assign(span_n + 1, 0.0);
    for (std::size_t i = 0; i < span_n; ++i)
      energy_prefix[i + 1] = energy_prefix[i] + span[i] * span[i];
    auto energy = [&](std::size_t from, std::size_t len) {
      return energy_prefix[from + len] - energy_prefix[from];
    };

    const double e0 = energy(0, window_n);
    std::vector<double> nccf(lag_max + 1, 0.0);
    for (std::size_t tau = lag_min; tau <= lag_max; ++tau) {
      const double denom = std::sqrt(e0 * energy(tau, window_n)) + 1e-12;
      nccf[tau] = num[tau] / denom;
    }

    auto& cands = candidates[t];
    cands.push_back(Candidate{
        0.0, pitch_detail::unvoiced_strength(local_peak, global_peak,
                                             params.silence_threshold,
                                             params.voicing_threshold)});
    for (std::size_t tau = lag_min + 1; tau + 1 <= lag_max; ++tau) {
      if (nccf[tau] > nccf[tau - 1] && nccf[tau] >= nccf[tau + 1] &&
          nccf[tau] > params.candidate_floor) {
        const double offset =
            dsp::parabolic_peak_offset(nccf[tau - 1], nccf[tau], nccf[tau + 1]);
        const double lag = static_cast<double>(tau) + offset;
        const double peak =
            nccf[tau] - 0.25 * (nccf[tau - 1] - nccf[tau + 1]) * offset;
        const double f0 = rate / lag;
        if (f0 < params.range_min_hz || f0 > params.range_max_hz) continue;
        const double strength =
            std::min(peak, 1.0) -
            params.octave_cost * std::log2(params.range_min_hz * lag / rate);
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

  pitch_detail::PathCosts costs{params.octave_jump_cost,
                                params.voiced_unvoiced_cost};
  const auto path = pitch_detail::best_candidate_path(candidates, costs);

  PitchTrack track;
  track.grid = grid;
  track.estimator = setting == NccfSetting::Default
                        ? PitchEstimatorKind::NccfDefault
                        : PitchEstimatorKind::NccfHilbert;
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
