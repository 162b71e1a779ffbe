#include "cp3/kernels.hpp"

#include <cmath>

#include "cp3/errors.hpp"

namespace cp3 {

RadialKernel::Derivs RadialKernel::eval(double R) const {
  const double R2 = R * R;
  const double R3 = R2 * R;
  switch (family) {
    case Family::CosOverR: {
      const double k = param;
      const double c = std::cos(k * R), s = std::sin(k * R);
      return {c / R,
              -k * s / R - c / R2,
              -k * k * c / R + 2.0 * k * s / R2 + 2.0 * c / R3};
    }
    case Family::SinOverR: {
      const double k = param;
      const double c = std::cos(k * R), s = std::sin(k * R);
      return {s / R,
              k * c / R - s / R2,
              -k * k * s / R - 2.0 * k * c / R2 + 2.0 * s / R3};
    }
    case Family::ExpOverR: {
      const double u = param;
      const double e = std::exp(-u * R);
      return {e / R,
              -u * e / R - e / R2,
              u * u * e / R + 2.0 * u * e / R2 + 2.0 * e / R3};
    }
    case Family::InverseR:
      return {1.0 / R, -1.0 / R2, 2.0 / R3};
  }
  return {};  // unreachable
}

namespace {

Mat3 f_from_derivs(double dg, double d2g, double R, const Vec3& rhat) {
  const double diag = -d2g - dg / R;
  const double rr = d2g - dg / R;
  Mat3 T = Mat3::identity() * diag;
  T += outer(rhat, rhat) * rr;
  return T;
}

void require_symmetric(const Mat3& T, const char* which) {
  const double scale = std::max(max_abs(T), 1.0);
  if (asymmetry(T) > 1e-12 * scale) throw AsymmetricInput(which);
}

}  // namespace

Mat3 f_apply(const RadialKernel& kernel, const Vec3& R_vec) {
  const double R = norm(R_vec);
  if (R < 1e-12) throw ZeroRadius("f_apply at |R| < 1e-12");
  const auto d = kernel.eval(R);
  return f_from_derivs(d.dg, d.d2g, R, R_vec * (1.0 / R));
}

CMat3 f_apply_exp_ik(double k, const Vec3& R_vec, int sign) {
  const Mat3 tc = f_apply(RadialKernel::cos_over_r(k), R_vec);
  const Mat3 ts = f_apply(RadialKernel::sin_over_r(k), R_vec);
  CMat3 r;
  const double s = sign >= 0 ? 1.0 : -1.0;
  for (int i = 0; i < 9; ++i) r.m[i] = {tc.m[i], s * ts.m[i]};
  return r;
}

Mat3 potential_tensor_nonresonant(double k, double kprime, const Vec3& c_vec) {
  const Mat3 fk = f_apply(RadialKernel::cos_over_r(k), c_vec);
  const Mat3 fkp = f_apply(RadialKernel::cos_over_r(kprime), c_vec);
  return (fk + fkp) * (-0.5);
}

Mat3 potential_tensor_resonant(double k0, const Vec3& c_vec) {
  return f_apply(RadialKernel::cos_over_r(k0), c_vec) * (-1.0);
}

double triple_contraction(const Mat3& T_c, const Mat3& T_b, const Mat3& T_a) {
  require_symmetric(T_c, "T_c");
  require_symmetric(T_b, "T_b");
  require_symmetric(T_a, "T_a");
  return (T_c * T_b * T_a).trace();
}

double dipole_contraction(const Mat3& T_c, const Mat3& T_b, const Mat3& T_a,
                          const Vec3& mu) {
  require_symmetric(T_c, "T_c");
  require_symmetric(T_b, "T_b");
  require_symmetric(T_a, "T_a");
  const Vec3 bm = T_b * mu;
  const Vec3 am = T_a * mu;
  return dot(bm, T_c * am);
}

}  // namespace cp3
