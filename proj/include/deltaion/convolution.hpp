#pragma once

namespace deltaion::detail {

// out += sum_{m=mlo}^{mhi} Wrev[off+m] * Y[m] with split re/im arrays.
// Both streams advance forward with unit stride.
void convolve_tail(const double* wrev_re, const double* wrev_im,
                   const double* yre, const double* yim, int off, int mlo,
                   int mhi, double& out_re, double& out_im);

// Blocked old-history contribution: for jj in [0, nb),
//   P[jj] += sum_{m=mlo}^{mhi} Wfwd[j0 + jj - m] * Y[m]
// with Wfwd indexed by distance d = j - m. Streams Y and W once per block,
// so long runs stay compute-bound instead of bandwidth-bound.
void convolve_block(const double* wfwd_re, const double* wfwd_im,
                    const double* yre, const double* yim, int j0, int mlo,
                    int mhi, int nb, double* p_re, double* p_im);

}  // namespace deltaion::detail
