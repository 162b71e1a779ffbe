#pragma once

#include <functional>
#include <vector>

namespace cp3 {

struct QuadratureSpec {
  double abs_tol = 1e-14;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  double pv_window = 0.0;  // 0 selects the default k0/100
  double min_panel = 0.0;  // panels narrower than this are not split further
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

struct VecQuadResult {
  std::vector<double> value;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;
// Writes n components into out.
using VecIntegrand = std::function<void(double, double*)>;

// Globally adaptive Gauss-Kronrod (G7/K15) on a finite interval.
// Throws NoConvergence when max_subdivisions is exhausted before the
// tolerance is met.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec);
VecQuadResult integrate_adaptive_vec(const VecIntegrand& f, int n, double a,
                                     double b, const QuadratureSpec& spec);

// Integral over [0, inf) of an integrand decaying at least like
// exp(-decay_rate * u). The domain is truncated where the exponential
// envelope falls below the tolerances; the truncation bound enters the
// error estimate.
QuadResult integrate_semi_infinite(const Integrand& f, double decay_rate,
                                   const QuadratureSpec& spec);
VecQuadResult integrate_semi_infinite_vec(const VecIntegrand& f, int n,
                                          double decay_rate,
                                          const QuadratureSpec& spec);

// Principal value of int_0^inf f(k) dk with a simple pole at k0. The pole
// is excised by a symmetric window (half-width spec.pv_window, default
// k0/100) whose contribution is the paired integral of f(k0+t)+f(k0-t);
// the oscillatory tail is integrated between consecutive zeros
// (half_period apart) and the alternating partial sums are accelerated by
// repeated averaging. Throws PoleAtBoundary if k0 <= window.
QuadResult integrate_pv(const Integrand& f, double k0, double half_period,
                        const QuadratureSpec& spec);

// Sine and cosine integrals. ci throws DomainError for x <= 0.
double si(double x);
double ci(double x);

}  // namespace cp3
