#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vocarch::dsp {

// Complex FFT of a fixed size backed by FFTW. Each instance owns its buffers
// and plans, so distinct instances can run on distinct threads concurrently.
class Fft {
 public:
  explicit Fft(std::size_t size);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return size_; }

  // out = FFT(in); in/out have size() elements and may alias internal buffers.
  void forward(const std::complex<double>* in, std::complex<double>* out);
  // out = IFFT(in) / size  (true inverse)
  void inverse(const std::complex<double>* in, std::complex<double>* out);

 private:
  std::size_t size_;
  void* plan_fwd_;
  void* plan_inv_;
  std::complex<double>* buf_in_;
  std::complex<double>* buf_out_;
};

// Smallest 2^a*3^b*5^c >= n (good FFTW sizes).
std::size_t next_fast_size(std::size_t n);

// --- windows -----------------------------------------------------------

std::vector<double> hann_window(std::size_t n);
// exp(-12 ((i/(n-1)) - 0.5)^2) rescaled to hit 0 at the ends.
std::vector<double> gaussian_window(std::size_t n);
std::vector<double> blackman_window(std::size_t n);
double kaiser_beta_i0(double x);

// --- correlation --------------------------------------------------------

// r[tau] = sum_n x[n] x[n+tau] for tau in [0, max_lag], computed via one
// FFT round trip. x is taken in full; the sum runs over all valid n.
void autocorrelation(std::span<const double> x, std::size_t max_lag,
                     std::vector<double>& r, Fft& fft);

// num[tau] = sum_{n=0}^{window-1} x[n] x[n+tau], tau in [0, max_lag].
// Exact NCCF/difference-function numerator (first factor fixed to the
// leading window). Requires x.size() >= window + max_lag.
void windowed_correlation(std::span<const double> x, std::size_t window,
                          std::size_t max_lag, std::vector<double>& num,
                          Fft& fft);

// --- resampling and filtering --------------------------------------------

// Windowed-sinc (Kaiser) resampler, stopband below -80 dB.
std::vector<double> resample(std::span<const double> x, double rate_in,
                             double rate_out);

// Linear-phase FIR via windowed sinc; taps must be odd.
std::vector<double> design_lowpass_fir(double cutoff_hz, double rate, int taps);
std::vector<double> design_bandpass_fir(double lo_hz, double hi_hz, double rate,
                                        int taps);
// Zero-delay convolution: output aligned with input (group delay removed).
std::vector<double> fir_filter(std::span<const double> x,
                               std::span<const double> h);

// One-pole pre-emphasis y[n] = x[n] - a x[n-1], a = exp(-2 pi from_hz / rate).
void pre_emphasis(std::vector<double>& x, double from_hz, double rate);

// Magnitude of the analytic signal.
std::vector<double> hilbert_envelope(std::span<const double> x);

// Energy fraction of the power spectrum above split_hz (Welch average,
// Hann frames of about 64 ms).
double high_band_energy_fraction(std::span<const double> x, double rate,
                                 double split_hz);

double parabolic_peak_offset(double left, double mid, double right);

}  // namespace vocarch::dsp
