#include "cp3/polarizability.hpp"

#include <cmath>

#include "cp3/errors.hpp"

namespace cp3 {

namespace {
double state_sign(const PolarizabilityModel& m) {
  return m.state == AtomState::Excited ? -1.0 : 1.0;
}
}  // namespace

Mat3 alpha_imag(const PolarizabilityModel& model, double u) {
  const double pre =
      state_sign(model) * 2.0 * model.k_res / (model.k_res * model.k_res + u * u);
  return outer(model.mu, model.mu) * pre;
}

Mat3 alpha_real(const PolarizabilityModel& model, double k) {
  if (std::abs(k - model.k_res) / model.k_res < 1e-6)
    throw NearResonance("alpha_real evaluated within 1e-6 of the pole");
  const double pre =
      state_sign(model) * 2.0 * model.k_res / (model.k_res * model.k_res - k * k);
  return outer(model.mu, model.mu) * pre;
}

double alpha_scalar_imag(const PolarizabilityModel& model, double u) {
  return state_sign(model) * 2.0 * model.k_res * model.mu_sq() /
         (model.k_res * model.k_res + u * u);
}

double alpha_scalar_real(const PolarizabilityModel& model, double k) {
  if (std::abs(k - model.k_res) / model.k_res < 1e-6)
    throw NearResonance("alpha_scalar_real evaluated within 1e-6 of the pole");
  return state_sign(model) * 2.0 * model.k_res * model.mu_sq() /
         (model.k_res * model.k_res - k * k);
}

}  // namespace cp3
