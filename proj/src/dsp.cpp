#include "vocarch/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include "vocarch/errors.hpp"

namespace vocarch::dsp {

namespace {
// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& fftw_plan_mutex() {
  static std::mutex m;
  return m;
}
constexpr double kPi = std::numbers::pi;
}  // namespace

Fft::Fft(std::size_t size) : size_(size) {
  buf_in_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * size));
  buf_out_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * size));
  std::lock_guard<std::mutex> lock(fftw_plan_mutex());
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(size),
                               reinterpret_cast<fftw_complex*>(buf_in_),
                               reinterpret_cast<fftw_complex*>(buf_out_),
                               FFTW_FORWARD, FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_dft_1d(static_cast<int>(size),
                               reinterpret_cast<fftw_complex*>(buf_in_),
                               reinterpret_cast<fftw_complex*>(buf_out_),
                               FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(fftw_plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(buf_in_);
  fftw_free(buf_out_);
}

void Fft::forward(const std::complex<double>* in, std::complex<double>* out) {
  std::memcpy(buf_in_, in, sizeof(std::complex<double>) * size_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  std::memcpy(out, buf_out_, sizeof(std::complex<double>) * size_);
}

void Fft::inverse(const std::complex<double>* in, std::complex<double>* out) {
  std::memcpy(buf_in_, in, sizeof(std::complex<double>) * size_);
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = buf_out_[i] * scale;
}

std::size_t next_fast_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t candidate = n;; ++candidate) {
    std::size_t m = candidate;
    while (m % 2 == 0) m /= 2;
    while (m % 3 == 0) m /= 3;
    while (m % 5 == 0) m /= 5;
    if (m == 1) return candidate;
  }
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (n - 1));
  return w;
}

std::vector<double> gaussian_window(std::size_t n) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  const double edge = std::exp(-12.0 * 0.25);  // value at i = 0 or n-1
  for (std::size_t i = 0; i < n; ++i) {
    double u = static_cast<double>(i) / (n - 1) - 0.5;
    w[i] = (std::exp(-12.0 * u * u) - edge) / (1.0 - edge);
  }
  return w;
}

std::vector<double> blackman_window(std::size_t n) {
  std::vector<double> w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double u = 2.0 * kPi * i / (n - 1);
    w[i] = 0.42 - 0.5 * std::cos(u) + 0.08 * std::cos(2.0 * u);
  }
  return w;
}

double kaiser_beta_i0(double x) {
  // series for the zeroth-order modified Bessel function
  double sum = 1.0, term = 1.0;
  for (int k = 1; k < 64; ++k) {
    term *= (x / (2.0 * k)) * (x / (2.0 * k));
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

void autocorrelation(std::span<const double> x, std::size_t max_lag,
                     std::vector<double>& r, Fft& fft) {
  const std::size_t n = x.size();
  const std::size_t fft_n = fft.size();
  std::vector<std::complex<double>> buf(fft_n, 0.0), spec(fft_n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
  fft.forward(buf.data(), spec.data());
  for (auto& c : spec) c = std::norm(c);
  fft.inverse(spec.data(), buf.data());
  r.resize(max_lag + 1);
  for (std::size_t tau = 0; tau <= max_lag; ++tau) r[tau] = buf[tau].real();
}

void windowed_correlation(std::span<const double> x, std::size_t window,
                          std::size_t max_lag, std::vector<double>& num,
                          Fft& fft) {
  const std::size_t fft_n = fft.size();
  std::vector<std::complex<double>> a(fft_n, 0.0), b(fft_n, 0.0);
  std::vector<std::complex<double>> fa(fft_n), fb(fft_n);
  for (std::size_t i = 0; i < window; ++i) a[i] = x[i];
  const std::size_t span_len = std::min(x.size(), window + max_lag);
  for (std::size_t i = 0; i < span_len; ++i) b[i] = x[i];
  fft.forward(a.data(), fa.data());
  fft.forward(b.data(), fb.data());
  for (std::size_t i = 0; i < fft_n; ++i) fa[i] = std::conj(fa[i]) * fb[i];
  fft.inverse(fa.data(), fb.data());
  num.resize(max_lag + 1);
  for (std::size_t tau = 0; tau <= max_lag; ++tau) num[tau] = fb[tau].real();
}

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

std::vector<double> resample(std::span<const double> x, double rate_in,
                             double rate_out) {
  if (rate_in <= 0 || rate_out <= 0)
    throw_error(ErrorCode::ParameterOutOfRange, "sample rates must be positive");
  if (x.empty()) return {};
  if (rate_in == rate_out) return std::vector<double>(x.begin(), x.end());

  const double ratio = rate_out / rate_in;
  const std::size_t n_out = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(static_cast<double>(x.size()) * ratio)));

  // Kaiser-windowed sinc; beta 10 keeps images below -90 dB.
  constexpr double kHalfZeros = 24.0;  // sinc zero crossings per side
  constexpr double kBeta = 10.0;
  constexpr double kRolloff = 0.925;
  const double bw = kRolloff * std::min(1.0, ratio);  // normalized bandwidth
  const double half_width = kHalfZeros / bw;          // in input samples
  const double i0_beta = kaiser_beta_i0(kBeta);

  // kernel lookup: bw*sinc(bw*u)*kaiser(u/half_width) tabulated on |u|
  constexpr std::size_t kTable = 1 << 14;
  std::vector<double> kernel(kTable + 2);
  for (std::size_t i = 0; i <= kTable; ++i) {
    const double u = half_width * static_cast<double>(i) / kTable;
    const double frac = u / half_width;
    const double w =
        kaiser_beta_i0(kBeta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) /
        i0_beta;
    kernel[i] = bw * sinc(bw * u) * w;
  }
  kernel[kTable + 1] = 0.0;
  const double table_scale = kTable / half_width;
  auto kernel_at = [&](double u) {
    const double pos = std::abs(u) * table_scale;
    const std::size_t idx = static_cast<std::size_t>(pos);
    if (idx >= kTable) return 0.0;
    const double frac = pos - idx;
    return kernel[idx] + frac * (kernel[idx + 1] - kernel[idx]);
  };

  std::vector<double> y(n_out);
  const double step = 1.0 / ratio;
  for (std::size_t m = 0; m < n_out; ++m) {
    const double t = m * step;
    const int j_lo = std::max(0, static_cast<int>(std::ceil(t - half_width)));
    const int j_hi = std::min(static_cast<int>(x.size()) - 1,
                              static_cast<int>(std::floor(t + half_width)));
    double acc = 0.0;
    for (int j = j_lo; j <= j_hi; ++j) acc += x[j] * kernel_at(t - j);
    y[m] = acc;
  }
  return y;
}

std::vector<double> design_lowpass_fir(double cutoff_hz, double rate, int taps) {
  if (taps % 2 == 0) taps += 1;
  const double fc = cutoff_hz / rate;
  auto w = blackman_window(static_cast<std::size_t>(taps));
  std::vector<double> h(taps);
  const int mid = taps / 2;
  double sum = 0.0;
  for (int i = 0; i < taps; ++i) {
    h[i] = 2.0 * fc * sinc(2.0 * fc * (i - mid)) * w[i];
    sum += h[i];
  }
  for (auto& v : h) v /= sum;  // unity DC gain
  return h;
}

std::vector<double> design_bandpass_fir(double lo_hz, double hi_hz, double rate,
                                        int taps) {
  if (taps % 2 == 0) taps += 1;
  auto low_hi = design_lowpass_fir(hi_hz, rate, taps);
  auto low_lo = design_lowpass_fir(lo_hz, rate, taps);
  std::vector<double> h(taps);
  for (int i = 0; i < taps; ++i) h[i] = low_hi[i] - low_lo[i];
  return h;
}

std::vector<double> fir_filter(std::span<const double> x,
                               std::span<const double> h) {
  const std::size_t n = x.size();
  const std::size_t m = h.size();
  const int delay = static_cast<int>(m / 2);
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    // y[i] = sum_k h[k] x[i + delay - k]
    const int base = static_cast<int>(i) + delay;
    const int k_lo = std::max(0, base - static_cast<int>(n) + 1);
    const int k_hi = std::min(static_cast<int>(m) - 1, base);
    for (int k = k_lo; k <= k_hi; ++k) acc += h[k] * x[base - k];
    y[i] = acc;
  }
  return y;
}

void pre_emphasis(std::vector<double>& x, double from_hz, double rate) {
  const double a = std::exp(-2.0 * kPi * from_hz / rate);
  for (std::size_t i = x.size(); i-- > 1;) x[i] -= a * x[i - 1];
}

std::vector<double> hilbert_envelope(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 64) throw_error(ErrorCode::TooShort, "hilbert_envelope needs >= 64 samples");
  const std::size_t fn = next_fast_size(n);
  Fft fft(fn);
  std::vector<std::complex<double>> buf(fn, 0.0), spec(fn);
  for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
  fft.forward(buf.data(), spec.data());
  // analytic signal: keep DC and Nyquist, double positives, zero negatives
  for (std::size_t i = 1; i < (fn + 1) / 2; ++i) spec[i] *= 2.0;
  if (fn % 2 == 0) {
    for (std::size_t i = fn / 2 + 1; i < fn; ++i) spec[i] = 0.0;
  } else {
    for (std::size_t i = (fn + 1) / 2; i < fn; ++i) spec[i] = 0.0;
  }
  fft.inverse(spec.data(), buf.data());
  std::vector<double> env(n);
  for (std::size_t i = 0; i < n; ++i) env[i] = std::abs(buf[i]);
  return env;
}

double high_band_energy_fraction(std::span<const double> x, double rate,
                                 double split_hz) {
  const std::size_t frame = next_fast_size(
      static_cast<std::size_t>(std::max(64.0, 0.064 * rate)));
  Fft fft(frame);
  auto window = hann_window(frame);
  std::vector<std::complex<double>> buf(frame), spec(frame);
  double total = 0.0, high = 0.0;
  const std::size_t hop = frame / 2;
  const std::size_t split_bin =
      static_cast<std::size_t>(std::ceil(split_hz / rate * frame));
  for (std::size_t start = 0; start + frame <= x.size(); start += hop) {
    for (std::size_t i = 0; i < frame; ++i) buf[i] = x[start + i] * window[i];
    fft.forward(buf.data(), spec.data());
    for (std::size_t k = 1; k <= frame / 2; ++k) {  // skip DC
      const double p = std::norm(spec[k]);
      total += p;
      if (k >= split_bin) high += p;
    }
  }
  if (total <= 0.0) return 0.0;
  return high / total;
}

double parabolic_peak_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (std::abs(denom) < 1e-30) return 0.0;
  double d = 0.5 * (left - right) / denom;
  return std::clamp(d, -0.5, 0.5);
}

}  // namespace vocarch::dsp
