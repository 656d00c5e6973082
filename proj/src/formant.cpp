#include "vocarch/formant.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vocarch/csv.hpp"
#include "vocarch/dsp.hpp"
#include "vocarch/errors.hpp"

namespace vocarch {

FormantConfig config_for_gender(Gender gender) {
  FormantConfig cfg;
  cfg.ceiling_hz = gender == Gender::F ? 5500.0 : 5000.0;
  cfg.n_formants_to_track = 5;
  return cfg;
}

FormantConfig six_formant_config() {
  FormantConfig cfg;
  cfg.ceiling_hz = 5500.0;
  cfg.n_formants_to_track = 6;
  return cfg;
}

namespace {

// Burg lattice recursion; returns coefficients a[1..order] of the prediction
// polynomial A(z) = 1 + a1 z^-1 + ... Empty frame (zero energy) yields false.
bool burg_coefficients(const std::vector<double>& x, int order,
                       std::vector<double>& a) {
  const int n = static_cast<int>(x.size());
  a.assign(order + 1, 0.0);
  a[0] = 1.0;
  std::vector<double> f(x), b(x), a_prev(order + 1, 0.0);

  double energy = 0.0;
  for (double v : x) energy += v * v;
  if (energy <= 0.0) return false;

  for (int k = 1; k <= order; ++k) {
    double num = 0.0, den = 0.0;
    for (int i = k; i < n; ++i) {
      num += f[i] * b[i - 1];
      den += f[i] * f[i] + b[i - 1] * b[i - 1];
    }
    if (den <= 0.0) return false;
    const double rc = -2.0 * num / den;
    if (!std::isfinite(rc))
      throw_error(ErrorCode::NumericalInstability,
                  "non-finite reflection coefficient in Burg recursion");

    a_prev = a;
    for (int i = 1; i <= k; ++i) a[i] = a_prev[i] + rc * a_prev[k - i];

    for (int i = n - 1; i >= k; --i) {
      const double fi = f[i];
      f[i] = fi + rc * b[i - 1];
      b[i] = b[i - 1] + rc * fi;
    }
  }
  return true;
}

struct RootFormant {
  double freq;
  double bandwidth;
};

std::vector<RootFormant> polynomial_resonances(const std::vector<double>& a,
                                               double rate) {
  const int order = static_cast<int>(a.size()) - 1;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) companion(0, i) = -a[i + 1];
  for (int i = 1; i < order; ++i) companion(i, i - 1) = 1.0;

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<RootFormant> out;
  const auto& roots = solver.eigenvalues();
  for (int i = 0; i < roots.size(); ++i) {
    const std::complex<double> z = roots[i];
    if (z.imag() <= 0.0) continue;  // keep one of each conjugate pair
    const double mag = std::abs(z);
    if (mag <= 0.0) continue;
    const double freq = std::arg(z) / (2.0 * std::numbers::pi) * rate;
    const double bandwidth = -std::log(mag) * rate / std::numbers::pi;
    out.push_back(RootFormant{freq, bandwidth});
  }
  std::sort(out.begin(), out.end(),
            [](const RootFormant& p, const RootFormant& q) {
              return p.freq < q.freq;
            });
  return out;
}

}  // namespace

std::vector<FormantFrame> estimate_formants(const Signal& signal,
                                            const FrameGrid& grid,
                                            const FormantConfig& config) {
  const double analysis_rate = 2.0 * config.ceiling_hz;
  const Signal work = resample_signal(signal, analysis_rate);
  const std::size_t window_n = static_cast<std::size_t>(
      std::llround(config.window_s * analysis_rate));
  if (work.samples.size() < 2 * window_n)
    throw_error(ErrorCode::TooShort, "formant analysis needs at least two windows");

  std::vector<double> emphasized = work.samples;
  dsp::pre_emphasis(emphasized, config.pre_emphasis_from_hz, analysis_rate);
  const Signal pre{std::move(emphasized), analysis_rate};

  const auto window = dsp::gaussian_window(window_n);
  const int order = 2 * config.n_formants_to_track;
  const double f_lo = 50.0;
  const double f_hi = config.ceiling_hz - 50.0;

  std::vector<FormantFrame> frames(grid.n_frames);
  std::vector<double> frame, a;
  for (std::size_t t = 0; t < grid.n_frames; ++t) {
    extract_frame(pre, grid.center(t), window_n, frame);
    double mean = 0.0;
    for (double v : frame) mean += v;
    mean /= static_cast<double>(window_n);
    for (std::size_t i = 0; i < window_n; ++i)
      frame[i] = (frame[i] - mean) * window[i];

    if (!burg_coefficients(frame, order, a)) continue;  // silent frame

    int slot = 0;
    for (const auto& res : polynomial_resonances(a, analysis_rate)) {
      if (res.freq <= f_lo || res.freq >= f_hi) continue;
      if (res.bandwidth >= config.max_bandwidth_hz) continue;
      frames[t].f[slot] = res.freq;
      frames[t].b[slot] = res.bandwidth;
      if (++slot == 4) break;
    }
  }
  return frames;
}

std::string formants_to_csv(const std::vector<FormantFrame>& frames,
                            const FrameGrid& grid, SourceKind source) {
  std::string out = "frame_idx,time_s,f1,f2,f3,f4,b1,b2,b3,b4,source\n";
  auto field = [](const std::optional<double>& v) {
    return v ? csv::format_double(*v, 2) : std::string();
  };
  for (std::size_t i = 0; i < frames.size(); ++i) {
    out += std::to_string(i);
    out += ',' + csv::format_double(grid.center(i), 3);
    for (int k = 0; k < 4; ++k) out += ',' + field(frames[i].f[k]);
    for (int k = 0; k < 4; ++k) out += ',' + field(frames[i].b[k]);
    out += ',';
    out += to_string(source);
    out += '\n';
  }
  return out;
}

}  // namespace vocarch
