#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace leolink {

using cplx = std::complex<double>;

/// Residual sample-level misalignment of one link at a given sync point.
struct SampleOffset {
  int delta = 0;   // samples into the symbol, [0, symbol_len)
  int excess = 0;  // part falling outside the CP window, [0, N]
  int guard = 0;   // CP window used when excess was computed
};

/// delta = (floor(tau / T_s) - sync) mod symbol_len, excess = max(delta - guard, 0).
SampleOffset sample_offset(double delay_s, double sample_period_s, int sync, int symbol_len,
                           int guard);

/// Same, starting from an integer arrival sample count.
SampleOffset sample_offset_from_samples(long long arrival_samples, int sync, int symbol_len,
                                        int guard);

/// ICI leakage coefficient between victim subcarrier n and source subcarrier
/// n2 at offset (delta, excess): (1/N) e^{-j 2 pi n2 delta / N}
/// sum_{l=excess}^{N-1} e^{j 2 pi (n2-n) l / N}, in closed form.
cplx ici_leakage(int n, int n2, int delta, int excess, int n_fft);

/// ISI leakage coefficient, the complementary window sum_{l=0}^{excess-1}.
cplx isi_leakage(int n, int n2, int delta, int excess, int n_fft);

/// Parseval row energies: (sum_{n2} |A|^2, sum_{n2} |B|^2) =
/// ((N - excess)/N, excess/N) for any fixed n.
std::pair<double, double> leakage_row_energy(int excess, int n_fft);

/// Unitary radix-2 FFT, in place. size must be a power of two.
void fft_inplace(std::vector<cplx>& data, bool inverse);

}  // namespace leolink
