#pragma once

#include <utility>

#include "cp3/linalg.hpp"
#include "cp3/polarizability.hpp"
#include "cp3/quadrature.hpp"

namespace cp3 {

// A box-quantized field mode: wavevector plus one of two transverse
// polarization unit vectors.
struct FieldMode {
  Vec3 k_vec;
  int polarization;  // 1 or 2
  Vec3 e_hat;

  double k() const { return norm(k_vec); }

  // Deterministic transverse basis: e1 = normalize(ref x khat),
  // e2 = khat x e1, with ref the coordinate axis least aligned with khat.
  static FieldMode make(const Vec3& k_vec, int polarization);
};

// The source atom whose dressing modifies the vacuum correlations.
struct SourceAtom {
  Vec3 position{0.0, 0.0, 0.0};
  PolarizabilityModel model{AtomState::Excited, 1.0, {0.0, 0.0, 1.0}};
};

struct CorrelationResult {
  Mat3 tensor;
  Mat3 resonant_part;
  Mat3 nonresonant_part;
  double quad_error = 0.0;
};

// Per-mode-pair correlator of the electric field around the dressed excited
// atom, including the (2pi/V)^2 normalization; the conjugate term is folded
// in, so the result is real. Throws OnResonanceMode if either mode sits on
// the atomic resonance.
Mat3 mode_correlation(const FieldMode& mode1, const FieldMode& mode2,
                      const Vec3& r, const Vec3& r_prime,
                      const SourceAtom& atom, double volume);

// The same correlator split into its resonant and nonresonant pieces
// (partial fractions in the mode wavenumbers); first = resonant.
std::pair<Mat3, Mat3> mode_correlation_split(const FieldMode& mode1,
                                             const FieldMode& mode2,
                                             const Vec3& r, const Vec3& r_prime,
                                             const SourceAtom& atom,
                                             double volume);

// Mode-summed spatial correlation tensor <E_l(r) E_m(r')> around the
// dressed atom, evaluated through the imaginary-frequency representation:
// the nonresonant part is a Laplace-type integral of the atomic
// polarizability, the resonant part is the closed-form term oscillating at
// the transition wavenumber (absent for a ground-state source atom).
CorrelationResult correlation_tensor(const Vec3& r, const Vec3& r_prime,
                                     const SourceAtom& atom,
                                     const QuadratureSpec& spec);

// Alternative evaluation through the principal-value representation over
// real wavenumbers, reduced to Si/Ci closed forms; exists to cross-validate
// correlation_tensor. Requires an excited source atom.
CorrelationResult correlation_tensor_pv(const Vec3& r, const Vec3& r_prime,
                                        const SourceAtom& atom,
                                        const QuadratureSpec& spec);

}  // namespace cp3
