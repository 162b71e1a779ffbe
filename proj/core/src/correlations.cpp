#include "cp3/correlations.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "cp3/errors.hpp"
#include "cp3/kernels.hpp"

namespace cp3 {

using std::complex;
using namespace std::complex_literals;

FieldMode FieldMode::make(const Vec3& k_vec, int polarization) {
  const double k = norm(k_vec);
  if (k < 1e-300) throw DomainError("FieldMode: zero wavevector");
  const Vec3 khat = k_vec * (1.0 / k);
  // Reference axis least aligned with khat.
  const double ax = std::abs(khat.x), ay = std::abs(khat.y), az = std::abs(khat.z);
  Vec3 ref{1.0, 0.0, 0.0};
  if (ay <= ax && ay <= az) ref = {0.0, 1.0, 0.0};
  else if (az <= ax && az <= ay) ref = {0.0, 0.0, 1.0};
  const Vec3 e1 = normalized(cross(ref, khat));
  const Vec3 e2 = cross(khat, e1);
  return {k_vec, polarization, polarization == 1 ? e1 : e2};
}

namespace {

void check_geometry(const Vec3& R, const Vec3& Rp) {
  if (norm(R) < 1e-12 || norm(Rp) < 1e-12)
    throw ZeroRadius("correlation evaluated at the source atom position");
}

void check_off_mode_resonance(double k, double k0) {
  if (std::abs(k - k0) < 1e-12 * k0)
    throw OnResonanceMode("mode wavenumber equals the atomic resonance");
}

struct ModeCtx {
  double pre;       // (2pi/V)^2 * (e1)_l-free part: polarization/dipole scalars
  Vec3 e1, e2;
  double k, kp, k0;
  complex<double> phase_R, phase_Rp;  // e^{i k.R}, e^{i k'.R'}
};

ModeCtx mode_ctx(const FieldMode& m1, const FieldMode& m2, const Vec3& r,
                 const Vec3& rp, const SourceAtom& atom, double volume) {
  const Vec3 R = r - atom.position;
  const Vec3 Rp = rp - atom.position;
  check_geometry(R, Rp);
  const double k0 = atom.model.k_res;
  ModeCtx c;
  c.e1 = m1.e_hat;
  c.e2 = m2.e_hat;
  c.k = m1.k();
  c.kp = m2.k();
  c.k0 = k0;
  const double v = 2.0 * std::numbers::pi / volume;
  c.pre = v * v * dot(m1.e_hat, atom.model.mu) * dot(m2.e_hat, atom.model.mu) *
          c.k * c.kp;
  c.phase_R = std::exp(1i * dot(m1.k_vec, R));
  c.phase_Rp = std::exp(1i * dot(m2.k_vec, Rp));
  return c;
}

Mat3 assemble(const ModeCtx& c, double scalar) {
  return outer(c.e1, c.e2) * scalar;
}

}  // namespace

Mat3 mode_correlation(const FieldMode& mode1, const FieldMode& mode2,
                      const Vec3& r, const Vec3& r_prime,
                      const SourceAtom& atom, double volume) {
  const ModeCtx c = mode_ctx(mode1, mode2, r, r_prime, atom, volume);
  check_off_mode_resonance(c.k, c.k0);
  check_off_mode_resonance(c.kp, c.k0);
  const complex<double> bracket =
      (1.0 / (c.k + c.kp)) * (1.0 / (c.k0 - c.k) + 1.0 / (c.k0 - c.kp)) *
          c.phase_R * c.phase_Rp -
      c.phase_R * std::conj(c.phase_Rp) / ((c.k0 - c.k) * (c.k0 - c.kp));
  return assemble(c, -c.pre * 2.0 * bracket.real());
}

std::pair<Mat3, Mat3> mode_correlation_split(const FieldMode& mode1,
                                             const FieldMode& mode2,
                                             const Vec3& r, const Vec3& r_prime,
                                             const SourceAtom& atom,
                                             double volume) {
  const ModeCtx c = mode_ctx(mode1, mode2, r, r_prime, atom, volume);
  check_off_mode_resonance(c.k, c.k0);
  check_off_mode_resonance(c.kp, c.k0);

  const complex<double> res_bracket =
      (1.0 / (c.k + c.kp)) *
          (1.0 / (c.k - c.k0) + 1.0 / (c.k + c.k0) + 1.0 / (c.kp - c.k0) +
           1.0 / (c.kp + c.k0)) *
          c.phase_R * c.phase_Rp +
      (1.0 / ((c.k - c.k0) * (c.kp - c.k0)) +
       1.0 / ((c.k + c.k0) * (c.kp + c.k0))) *
          c.phase_R * std::conj(c.phase_Rp);
  const complex<double> nr_bracket =
      (1.0 / (c.k + c.kp)) * (1.0 / (c.k + c.k0) + 1.0 / (c.kp + c.k0)) *
          c.phase_R * c.phase_Rp +
      c.phase_R * std::conj(c.phase_Rp) / ((c.k + c.k0) * (c.kp + c.k0));

  return {assemble(c, c.pre * 2.0 * res_bracket.real()),
          assemble(c, -c.pre * 2.0 * nr_bracket.real())};
}

namespace {

Mat3 resonant_closed_form(const Vec3& R, const Vec3& Rp,
                          const PolarizabilityModel& model) {
  const double k0 = model.k_res;
  const Vec3 tc = f_apply(RadialKernel::cos_over_r(k0), R) * model.mu;
  const Vec3 tcp = f_apply(RadialKernel::cos_over_r(k0), Rp) * model.mu;
  const Vec3 ts = f_apply(RadialKernel::sin_over_r(k0), R) * model.mu;
  const Vec3 tsp = f_apply(RadialKernel::sin_over_r(k0), Rp) * model.mu;
  // 2 mu_n mu_p F F cos k0(R-R')/(RR'), with the cosine expanded so each F
  // acts on a single-variable kernel.
  return (outer(tc, tcp) + outer(ts, tsp)) * 2.0;
}

}  // namespace

CorrelationResult correlation_tensor(const Vec3& r, const Vec3& r_prime,
                                     const SourceAtom& atom,
                                     const QuadratureSpec& spec) {
  const Vec3 R = r - atom.position;
  const Vec3 Rp = r_prime - atom.position;
  check_geometry(R, Rp);
  const PolarizabilityModel& model = atom.model;
  const double sum_dist = norm(R) + norm(Rp);

  const auto integrand = [&](double u, double* out) {
    const double scalar = (model.state == AtomState::Excited ? -2.0 : 2.0) *
                          model.k_res / (model.k_res * model.k_res + u * u);
    const Vec3 t = f_apply(RadialKernel::exp_over_r(u), R) * model.mu;
    const Vec3 tp = f_apply(RadialKernel::exp_over_r(u), Rp) * model.mu;
    const Mat3 m = outer(t, tp) * scalar;
    for (int i = 0; i < 9; ++i) out[i] = m.m[i];
  };
  const auto q = integrate_semi_infinite_vec(integrand, 9, sum_dist, spec);

  CorrelationResult res;
  for (int i = 0; i < 9; ++i)
    res.nonresonant_part.m[i] = q.value[static_cast<size_t>(i)] / std::numbers::pi;
  res.quad_error = q.error / std::numbers::pi;
  res.resonant_part = model.state == AtomState::Excited
                          ? resonant_closed_form(R, Rp, model)
                          : Mat3{};
  res.tensor = res.resonant_part + res.nonresonant_part;
  return res;
}

CorrelationResult correlation_tensor_pv(const Vec3& r, const Vec3& r_prime,
                                        const SourceAtom& atom,
                                        const QuadratureSpec& spec) {
  (void)spec;  // the reduction is closed-form; no quadrature left
  const Vec3 R_vec = r - atom.position;
  const Vec3 Rp_vec = r_prime - atom.position;
  check_geometry(R_vec, Rp_vec);
  if (atom.model.state != AtomState::Excited)
    throw DomainError("correlation_tensor_pv requires an excited source atom");

  const double R = norm(R_vec), Rp = norm(Rp_vec);
  const double k0 = atom.model.k_res;
  const Vec3 mu = atom.model.mu;
  const double sigma = R + Rp;

  // F[e^{ikR}/R] mu = (k^2 v1 + i k v2 + v3) e^{ikR} with
  //   v1 = (1 - Rhat Rhat) mu / R
  //   v2 = (1 - 3 Rhat Rhat) mu / R^2
  //   v3 = -(1 - 3 Rhat Rhat) mu / R^3
  const auto poly_vectors = [&mu](const Vec3& rv, double rn, Vec3 v[3]) {
    const Vec3 rhat = rv * (1.0 / rn);
    const Mat3 proj1 = Mat3::identity() - outer(rhat, rhat);
    const Mat3 proj3 = Mat3::identity() - outer(rhat, rhat) * 3.0;
    v[0] = (proj1 * mu) * (1.0 / rn);
    v[1] = (proj3 * mu) * (1.0 / (rn * rn));
    v[2] = (proj3 * mu) * (-1.0 / (rn * rn * rn));
  };
  Vec3 v[3], w[3];
  poly_vectors(R_vec, R, v);
  poly_vectors(Rp_vec, Rp, w);

  // Regularized moments M_n = P int_0^inf k^n e^{ik sigma} / (k - k0) dk:
  //   M_0 = e^{i k0 sigma} ( -Ci(k0 sigma) + i (pi/2 + Si(k0 sigma)) )
  //   M_n = k0^n M_0 + sum_{m<n} k0^{n-1-m} I_m,  I_m = m! i^{m+1}/sigma^{m+1}
  const double x = k0 * sigma;
  const complex<double> M0 =
      std::exp(1i * x) *
      complex<double>(-ci(x), std::numbers::pi / 2.0 + si(x));
  complex<double> M[5];
  complex<double> I[4];
  double fact = 1.0;
  complex<double> ipow = 1i;  // i^(m+1)
  for (int m = 0; m < 4; ++m) {
    if (m > 0) fact *= m;
    I[m] = fact * ipow / std::pow(sigma, m + 1);
    ipow *= 1i;
  }
  M[0] = M0;
  for (int n = 1; n <= 4; ++n) {
    complex<double> s = std::pow(k0, n) * M0;
    for (int m = 0; m < n; ++m) s += std::pow(k0, n - 1 - m) * I[m];
    M[n] = s;
  }

  CorrelationResult res;
  res.resonant_part = resonant_closed_form(R_vec, Rp_vec, atom.model);
  const Vec3 ts = f_apply(RadialKernel::sin_over_r(k0), R_vec) * mu;
  const Vec3 tsp = f_apply(RadialKernel::sin_over_r(k0), Rp_vec) * mu;

  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m) {
      // (k^2 v1 + i k v2 + v3)_l (k^2 w1 + i k w2 + w3)_m as a degree-4
      // complex polynomial in k.
      const complex<double> p4 = v[0][l] * w[0][m];
      const complex<double> p3 = 1i * (v[0][l] * w[1][m] + v[1][l] * w[0][m]);
      const complex<double> p2 =
          v[0][l] * w[2][m] + v[2][l] * w[0][m] - v[1][l] * w[1][m];
      const complex<double> p1 = 1i * (v[1][l] * w[2][m] + v[2][l] * w[1][m]);
      const complex<double> p0 = v[2][l] * w[2][m];
      const complex<double> pv_val =
          p4 * M[4] + p3 * M[3] + p2 * M[2] + p1 * M[1] + p0 * M[0];
      res.tensor(l, m) = (2.0 / std::numbers::pi) * pv_val.imag() +
                         4.0 * ts[l] * tsp[m];
    }

  res.nonresonant_part = res.tensor - res.resonant_part;
  res.quad_error = 0.0;
  return res;
}

}  // namespace cp3
