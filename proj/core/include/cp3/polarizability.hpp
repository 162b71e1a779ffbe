#pragma once

#include "cp3/linalg.hpp"

namespace cp3 {

enum class AtomState { Ground, Excited };

// Two-level atom: resonance wavenumber k_res and transition dipole mu.
// Natural units (hbar = c = 1) throughout.
struct PolarizabilityModel {
  AtomState state = AtomState::Ground;
  double k_res = 1.0;
  Vec3 mu{0.0, 0.0, 1.0};

  double mu_sq() const { return dot(mu, mu); }
};

// alpha_{mp}(iu) = s * 2 k_res mu_m mu_p / (k_res^2 + u^2),
// s = -1 for the excited state, +1 for the ground state.
Mat3 alpha_imag(const PolarizabilityModel& model, double u);

// alpha_{mp}(k) = s * 2 k_res mu_m mu_p / (k_res^2 - k^2).
// Throws NearResonance for |k - k_res|/k_res < 1e-6.
Mat3 alpha_real(const PolarizabilityModel& model, double k);

// Isotropic scalar forms built from the full dipole strength |mu|^2.
double alpha_scalar_imag(const PolarizabilityModel& model, double u);
double alpha_scalar_real(const PolarizabilityModel& model, double k);

}  // namespace cp3
