#pragma once

#include "cp3/linalg.hpp"

namespace cp3 {

// Scalar radial kernel g(R) with analytic first and second derivatives.
// ExpOverR accepts a negative decay rate (growing exponential); that form
// appears only inside the three-body bracket terms where the total exponent
// stays negative.
struct RadialKernel {
  enum class Family { CosOverR, SinOverR, ExpOverR, InverseR };

  Family family = Family::InverseR;
  double param = 0.0;  // wavenumber k or decay rate u

  struct Derivs {
    double g, dg, d2g;
  };

  Derivs eval(double R) const;

  static RadialKernel cos_over_r(double k) { return {Family::CosOverR, k}; }
  static RadialKernel sin_over_r(double k) { return {Family::SinOverR, k}; }
  static RadialKernel exp_over_r(double u) { return {Family::ExpOverR, u}; }
  static RadialKernel inverse_r() { return {Family::InverseR, 0.0}; }
};

// F_{ln}[g] = (-delta_{ln} grad^2 + grad_l grad_n) g(|r|) at r = R_vec.
// For radial g this reduces to
//   F = delta * (-g'' - g'/R) + Rhat Rhat * (g'' - g'/R).
// Throws ZeroRadius for |R_vec| < 1e-12.
Mat3 f_apply(const RadialKernel& kernel, const Vec3& R_vec);

// F applied to the complex kernel e^{i s k R}/R with s = +-1:
// f_apply(cos k R / R) + i s f_apply(sin k R / R).
CMat3 f_apply_exp_ik(double k, const Vec3& R_vec, int sign);

// Nonresonant dipole coupling tensor: -1/2 (F[cos kc/c] + F[cos k'c/c]).
Mat3 potential_tensor_nonresonant(double k, double kprime, const Vec3& c_vec);

// Resonant coupling tensor -F[cos k0 c / c]; coincides with the
// nonresonant tensor at k = k' = k0.
Mat3 potential_tensor_resonant(double k0, const Vec3& c_vec);

// sum_{l,m,n} (T_c)_{lm} (T_b)_{ln} (T_a)_{mn} = tr(T_c T_b T_a) for
// symmetric inputs. Throws AsymmetricInput if any input has asymmetry
// above 1e-12 relative to its largest element.
double triple_contraction(const Mat3& T_c, const Mat3& T_b, const Mat3& T_a);

// sum_{l,m,n,p} (T_c)_{lm} (T_b)_{ln} (T_a)_{mp} mu_n mu_p
//   = (T_b mu)^T T_c (T_a mu).
double dipole_contraction(const Mat3& T_c, const Mat3& T_b, const Mat3& T_a,
                          const Vec3& mu);

}  // namespace cp3
