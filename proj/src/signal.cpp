#include "vocarch/signal.hpp"

#include <cmath>

#include "vocarch/dsp.hpp"
#include "vocarch/errors.hpp"
#include "vocarch/wav.hpp"

namespace vocarch {

const char* to_string(SourceKind s) {
  return s == SourceKind::Raw ? "raw" : "separated";
}

FrameGrid make_grid(double duration_s, double hop_s) {
  FrameGrid grid;
  grid.hop_s = hop_s;
  grid.t0_s = hop_s / 2.0;
  grid.n_frames = static_cast<std::size_t>(
      std::max(0.0, std::floor(duration_s / hop_s + 1e-9)));
  return grid;
}

Signal decode_and_resample(const std::string& path, double target_rate) {
  wav::WavData data = wav::read(path);
  Signal s{std::move(data.samples), data.sample_rate};
  return resample_signal(s, target_rate);
}

Signal resample_signal(const Signal& in, double target_rate) {
  if (in.sample_rate == target_rate) return in;
  Signal out;
  out.sample_rate = target_rate;
  out.samples = dsp::resample(in.samples, in.sample_rate, target_rate);
  return out;
}

Signal hilbert_envelope(const Signal& in) {
  return Signal{dsp::hilbert_envelope(in.samples), in.sample_rate};
}

void extract_frame(const Signal& in, double center_s, std::size_t window_n,
                   std::vector<double>& frame) {
  frame.assign(window_n, 0.0);
  const long long center =
      static_cast<long long>(std::llround(center_s * in.sample_rate));
  const long long start = center - static_cast<long long>(window_n) / 2;
  const long long n = static_cast<long long>(in.samples.size());
  for (std::size_t k = 0; k < window_n; ++k) {
    const long long idx = start + static_cast<long long>(k);
    if (idx >= 0 && idx < n) frame[k] = in.samples[idx];
  }
}

std::vector<std::vector<double>> frame_signal(const Signal& in,
                                              const FrameGrid& grid,
                                              double window_s) {
  if (window_s < grid.hop_s)
    throw_error(ErrorCode::ConfigError, "window must cover at least one hop");
  const std::size_t window_n =
      static_cast<std::size_t>(std::llround(window_s * in.sample_rate));
  std::vector<std::vector<double>> frames(grid.n_frames);
  std::vector<double> buf;
  for (std::size_t i = 0; i < grid.n_frames; ++i) {
    extract_frame(in, grid.center(i), window_n, buf);
    frames[i] = buf;
  }
  return frames;
}

}  // namespace vocarch
