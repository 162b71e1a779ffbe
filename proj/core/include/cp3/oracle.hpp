#pragma once

#include "cp3/correlations.hpp"
#include "cp3/kernels.hpp"
#include "cp3/linalg.hpp"

namespace cp3 {

// Quantization box: mode lattice k = (2 pi / L) n for integer n != 0 with
// |k| <= k_cut, two transverse polarizations per k.
struct BoxSpec {
  double L = 40.0;
  double k_cut = 20.0;
};

// Central-difference assembly of (-delta grad^2 + grad grad) g(|r|).
// Throws StepTooLarge if h > |R_vec|/10.
Mat3 fd_f_apply(const RadialKernel& kernel, const Vec3& R_vec, double h);

// Direct lattice double sum of the nonresonant mode correlator. The
// 1/(k+k') coupling is factorized through a Laplace parameter so the double
// sum reduces to products of single shell sums. The sum is conditionally
// convergent: each evaluation carries a convergence factor e^{-eps k} and
// the eps -> 0 limit is taken by polynomial extrapolation over an eps
// ladder tied to k_cut, with a smooth spectral rolloff suppressing the
// truncation. Accuracy improves with k_cut (k_cut ~ 160/sigma for sub-
// percent work, sigma = min distance). Throws InsufficientBox if
// L < 10 max(R, R').
Mat3 box_mode_sum_nonresonant(const BoxSpec& box, const Vec3& r,
                              const Vec3& r_prime, const SourceAtom& atom);

// Removes the finite-size (periodic-image) error, which falls off as
// 1/L^4, by one Richardson step between edge lengths L and 1.5 L.
Mat3 box_mode_sum_extrapolated(const BoxSpec& box, const Vec3& r,
                               const Vec3& r_prime, const SourceAtom& atom);

}  // namespace cp3
