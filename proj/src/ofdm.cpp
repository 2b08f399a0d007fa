#include "leolink/ofdm.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "leolink/constants.hpp"

namespace leolink {

SampleOffset sample_offset_from_samples(long long arrival_samples, int sync, int symbol_len,
                                        int guard) {
  long long d = (arrival_samples - sync) % symbol_len;
  if (d < 0) d += symbol_len;
  SampleOffset off;
  off.delta = static_cast<int>(d);
  off.excess = std::max(off.delta - guard, 0);
  off.guard = guard;
  return off;
}

SampleOffset sample_offset(double delay_s, double sample_period_s, int sync, int symbol_len,
                           int guard) {
  const auto arrival = static_cast<long long>(std::floor(delay_s / sample_period_s));
  return sample_offset_from_samples(arrival, sync, symbol_len, guard);
}

namespace {

inline cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

cplx ici_leakage(int n, int n2, int delta, int excess, int n_fft) {
  const double N = n_fft;
  const cplx pre = unit_phase(-2.0 * kPi * n2 * delta / N);
  if (n == n2) return pre * ((N - excess) / N);
  if (excess == n_fft) return {0.0, 0.0};
  // sum_{l=excess}^{N-1} w^l with w = e^{j 2 pi (n2-n)/N}; w^N = 1, so the
  // sum collapses to (w^excess - 1) / (1 - w).
  const double w_angle = 2.0 * kPi * (n2 - n) / N;
  const cplx w = unit_phase(w_angle);
  const cplx num = unit_phase(w_angle * excess) - 1.0;
  return pre * num / (N * (1.0 - w));
}

cplx isi_leakage(int n, int n2, int delta, int excess, int n_fft) {
  const double N = n_fft;
  const cplx pre = unit_phase(-2.0 * kPi * n2 * delta / N);
  if (n == n2) return pre * (excess / N);
  if (excess == 0) return {0.0, 0.0};
  // sum_{l=0}^{excess-1} w^l = (1 - w^excess) / (1 - w)
  const double w_angle = 2.0 * kPi * (n2 - n) / N;
  const cplx w = unit_phase(w_angle);
  const cplx num = 1.0 - unit_phase(w_angle * excess);
  return pre * num / (N * (1.0 - w));
}

std::pair<double, double> leakage_row_energy(int excess, int n_fft) {
  const double N = n_fft;
  return {(N - excess) / N, excess / N};
}

void fft_inplace(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft size must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
    const cplx wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const cplx u = data[i + j];
        const cplx v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& x : data) x *= scale;
}

}  // namespace leolink
