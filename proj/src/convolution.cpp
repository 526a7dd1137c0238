#include "deltaion/convolution.hpp"

// Hot loops of the Volterra recursion, isolated so they can be compiled
// with value-unsafe optimizations (reduction reassociation) without
// touching the rest of the library.

namespace deltaion::detail {

void convolve_tail(const double* wrev_re, const double* wrev_im,
                   const double* yre, const double* yim, int off, int mlo,
                   int mhi, double& out_re, double& out_im) {
  const double* wr = wrev_re + off;
  const double* wi = wrev_im + off;
  double sre = 0.0, sim = 0.0;
  for (int m = mlo; m <= mhi; ++m) {
    sre += wr[m] * yre[m] - wi[m] * yim[m];
    sim += wr[m] * yim[m] + wi[m] * yre[m];
  }
  out_re += sre;
  out_im += sim;
}

void convolve_block(const double* wfwd_re, const double* wfwd_im,
                    const double* yre, const double* yim, int j0, int mlo,
                    int mhi, int nb, double* p_re, double* p_im) {
  // chunk the block so the accumulators live in registers across the whole
  // m sweep; the weight window slides by one as m advances
  constexpr int C = 8;
  int jj = 0;
  for (; jj + C <= nb; jj += C) {
    double ar[C] = {0}, ai[C] = {0};
    const double* wr0 = wfwd_re + (j0 + jj);
    const double* wi0 = wfwd_im + (j0 + jj);
    for (int m = mlo; m <= mhi; ++m) {
      const double yr = yre[m];
      const double yi = yim[m];
      const double* wr = wr0 - m;
      const double* wi = wi0 - m;
      for (int c = 0; c < C; ++c) {
        ar[c] += wr[c] * yr - wi[c] * yi;
        ai[c] += wr[c] * yi + wi[c] * yr;
      }
    }
    for (int c = 0; c < C; ++c) {
      p_re[jj + c] += ar[c];
      p_im[jj + c] += ai[c];
    }
  }
  for (; jj < nb; ++jj) {
    double sr = 0.0, si = 0.0;
    const double* wr0 = wfwd_re + (j0 + jj);
    const double* wi0 = wfwd_im + (j0 + jj);
    for (int m = mlo; m <= mhi; ++m) {
      sr += wr0[-m] * yre[m] - wi0[-m] * yim[m];
      si += wr0[-m] * yim[m] + wi0[-m] * yre[m];
    }
    p_re[jj] += sr;
    p_im[jj] += si;
  }
}

}  // namespace deltaion::detail
