#include <algorithm>
#include <cmath>
#include <limits>

#include "vocarch/dsp.hpp"
#include "vocarch/errors.hpp"
#include "vocarch/pitch.hpp"

namespace vocarch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

PitchTrack estimate_wide(const Signal& signal, const FrameGrid& grid,
                         const WideParams& params) {
  const double rate = signal.sample_rate;
  const std::size_t window_n =
      static_cast<std::size_t>(std::llround(rate / params.range_min_hz));
  if (signal.samples.size() < 2 * window_n)
    throw_error(ErrorCode::TooShort, "wide-range pitch analysis needs at least two windows");

  const std::size_t lag_max = window_n;  // one full period of range_min
  const std::size_t span_n = window_n + lag_max + 1;
  dsp::Fft fft(dsp::next_fast_size(span_n));

  // log-F0 state grid
  const double st_span = 12.0 * std::log2(params.range_max_hz / params.range_min_hz);
  const int n_states =
      static_cast<int>(std::ceil(st_span * params.states_per_semitone)) + 1;
  std::vector<double> state_f0(n_states), state_lag(n_states);
  for (int s = 0; s < n_states; ++s) {
    const double st = static_cast<double>(s) / params.states_per_semitone;
    state_f0[s] = params.range_min_hz * std::pow(2.0, st / 12.0);
    state_lag[s] = rate / state_f0[s];
  }

  const std::size_t n_frames = grid.n_frames;
  // emission[t] laid out as n_states voiced costs then one unvoiced cost
  std::vector<std::vector<double>> diff_norm(n_frames);

  std::vector<double> span, num, energy_prefix;
  for (std::size_t t = 0; t < n_frames; ++t) {
    extract_frame(signal, grid.center(t) + (lag_max * 0.5) / rate, span_n, span);
    double mean = 0.0;
    for (double v : span) mean += v;
    mean /= static_cast<double>(span_n);
    for (auto& v : span) v -= mean;

    dsp::windowed_correlation(span, window_n, lag_max, num, fft);
    energy_prefix.assign(span_n + 1, 0.0);
    for (std::size_t i = 0; i < span_n; ++i)
      energy_prefix[i + 1] = energy_prefix[i] + span[i] * span[i];
    const double e0 = energy_prefix[window_n];

    // cumulative-mean-normalized difference function
    auto& dn = diff_norm[t];
    dn.assign(lag_max + 1, 1.0);
    double running = 0.0;
    for (std::size_t tau = 1; tau <= lag_max; ++tau) {
      const double e_tau =
          energy_prefix[tau + window_n] - energy_prefix[tau];
      const double d = std::max(0.0, e0 + e_tau - 2.0 * num[tau]);
      running += d;
      dn[tau] = running > 0.0 ? d * static_cast<double>(tau) / running : 1.0;
    }
  }

  auto diff_at = [&](const std::vector<double>& dn, double lag) {
    const std::size_t i = static_cast<std::size_t>(lag);
    if (i + 1 >= dn.size()) return dn.back();
    const double frac = lag - static_cast<double>(i);
    return dn[i] + frac * (dn[i + 1] - dn[i]);
  };

  // Viterbi over n_states voiced states + 1 unvoiced state
  const double slope = params.transition_cost_per_st / params.states_per_semitone;
  std::vector<double> cost_v(n_states, 0.0);
  double cost_u = 0.0;
  std::vector<std::vector<int32_t>> from_uv(n_frames);  // 1 = came from unvoiced
  std::vector<int32_t> uv_back(n_frames, -1);
  std::vector<std::vector<int32_t>> arg_v;  // backpointers for voiced states
  arg_v.reserve(n_frames);

  std::vector<double> reach(n_states);
  std::vector<int32_t> reach_arg(n_states);
  for (std::size_t t = 0; t < n_frames; ++t) {
    std::vector<int32_t> back(n_states);
    std::vector<int32_t> uv_flags(n_states, 0);
    if (t == 0) {
      for (int s = 0; s < n_states; ++s)
        cost_v[s] = diff_at(diff_norm[t], state_lag[s]);
      cost_u = params.unvoiced_level;
      arg_v.push_back(std::move(back));
      from_uv[t] = std::move(uv_flags);
      continue;
    }
    // voiced -> voiced via distance transform,
    // tracking an argmin alongside the two sweeps
    reach = cost_v;
    for (int s = 0; s < n_states; ++s) reach_arg[s] = s;
    for (int s = 1; s < n_states; ++s) {
      if (reach[s - 1] + slope < reach[s]) {
        reach[s] = reach[s - 1] + slope;
        reach_arg[s] = reach_arg[s - 1];
      }
    }
    for (int s = n_states - 2; s >= 0; --s) {
      if (reach[s + 1] + slope < reach[s]) {
        reach[s] = reach[s + 1] + slope;
        reach_arg[s] = reach_arg[s + 1];
      }
    }
    const double from_unvoiced = cost_u + params.voiced_unvoiced_cost;
    double best_prev_voiced = kInf;
    int best_prev_voiced_arg = 0;
    for (int s = 0; s < n_states; ++s) {
      if (cost_v[s] < best_prev_voiced) {
        best_prev_voiced = cost_v[s];
        best_prev_voiced_arg = s;
      }
    }
    std::vector<double> next_v(n_states);
    for (int s = 0; s < n_states; ++s) {
      double c = reach[s];
      back[s] = reach_arg[s];
      if (from_unvoiced < c) {
        c = from_unvoiced;
        uv_flags[s] = 1;
      }
      next_v[s] = c + diff_at(diff_norm[t], state_lag[s]);
    }
    const double stay_unvoiced = cost_u;
    const double enter_unvoiced = best_prev_voiced + params.voiced_unvoiced_cost;
    uv_back[t] = stay_unvoiced <= enter_unvoiced ? -1 : best_prev_voiced_arg;
    cost_u = std::min(stay_unvoiced, enter_unvoiced) + params.unvoiced_level;
    cost_v = std::move(next_v);
    arg_v.push_back(std::move(back));
    from_uv[t] = std::move(uv_flags);
  }

  // backtrack
  PitchTrack track;
  track.grid = grid;
  track.estimator = PitchEstimatorKind::Wide;
  track.range_min_hz = params.range_min_hz;
  track.range_max_hz = params.range_max_hz;
  track.frames.resize(n_frames);
  if (n_frames == 0) return track;

  int state = -1;  // -1 = unvoiced
  double best = cost_u;
  for (int s = 0; s < n_states; ++s) {
    if (cost_v[s] < best) {
      best = cost_v[s];
      state = s;
    }
  }
  for (std::size_t t = n_frames; t-- > 0;) {
    if (state >= 0) {
      // refine within the winning state's neighborhood
      const double lag_c = state_lag[state];
      const std::size_t tau = static_cast<std::size_t>(
          std::llround(std::clamp(lag_c, 2.0, static_cast<double>(lag_max - 1))));
      const auto& dn = diff_norm[t];
      double offset = dsp::parabolic_peak_offset(dn[tau - 1], dn[tau], dn[tau + 1]);
      double f0 = rate / (static_cast<double>(tau) + offset);
      const double half_state_st = 0.5 / params.states_per_semitone;
      const double lo = state_f0[state] * std::pow(2.0, -2.0 * half_state_st / 12.0);
      const double hi = state_f0[state] * std::pow(2.0, 2.0 * half_state_st / 12.0);
      f0 = std::clamp(f0, lo, hi);
      track.frames[t].voiced = true;
      track.frames[t].f0_hz =
          std::clamp(f0, params.range_min_hz, params.range_max_hz);
    }
    if (t == 0) break;
    if (state >= 0)
      state = from_uv[t][state] ? -1 : arg_v[t][state];
    else
      state = uv_back[t];  // -1 stays unvoiced
  }
  return track;
}

}  // namespace vocarch
