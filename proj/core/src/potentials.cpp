#include "cp3/potentials.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>

#include "cp3/errors.hpp"
#include "cp3/kernels.hpp"

namespace cp3 {

namespace {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

struct Sides {
  Vec3 a_vec, b_vec, c_vec;
  double a, b, c;
};

Sides sides_of(const AtomTriangle& t) {
  return {t.a_vec(), t.b_vec(), t.c_vec(), t.a, t.b, t.c};
}

// Cyclic relabeling (A,B,C) -> (B,C,A) maps side roles (a,b,c) -> (b,c,a).
Sides cycled(const Sides& s) {
  return {s.b_vec, s.c_vec, s.a_vec, s.b, s.c, s.a};
}

double alpha_product(const PolarizabilityModel& A, const PolarizabilityModel& B,
                     const PolarizabilityModel& C, double u) {
  return alpha_scalar_imag(A, u) * alpha_scalar_imag(B, u) *
         alpha_scalar_imag(C, u);
}

double bracket_contraction(const Sides& s, double u,
                           const std::array<BracketTerm, 4>& terms) {
  double sum = 0.0;
  for (const auto& t : terms) {
    if (t.weight == 0.0) continue;
    const Mat3 Fa = f_apply(RadialKernel::exp_over_r(t.sign[0] * u), s.a_vec);
    const Mat3 Fb = f_apply(RadialKernel::exp_over_r(t.sign[1] * u), s.b_vec);
    const Mat3 Fc = f_apply(RadialKernel::exp_over_r(t.sign[2] * u), s.c_vec);
    sum += t.weight * (Fc * Fb * Fa).trace();
  }
  return sum;
}

// The resonant term is never symmetrized; shared verbatim by the pair
// energy and both three-body routes. Assembled from complex kernels
// e^{+i k0 a}, e^{-i k0 b}, e^{+-i k0 c} so each F acts on one distance.
double resonant_energy(const Sides& s, const PolarizabilityModel& A,
                       const PolarizabilityModel& B,
                       const PolarizabilityModel& C) {
  if (C.mu_sq() == 0.0) return 0.0;
  const double k0 = C.k_res;
  const double aA = alpha_scalar_real(A, k0);
  const double aB = alpha_scalar_real(B, k0);
  const CMat3 Fa = f_apply_exp_ik(k0, s.a_vec, +1);
  const CMat3 Fb = f_apply_exp_ik(k0, s.b_vec, -1);
  const CMat3 Fc_plus = f_apply_exp_ik(k0, s.c_vec, +1);
  const CMat3 Fc_minus = f_apply_exp_ik(k0, s.c_vec, -1);

  const CVec3 mu = to_complex(C.mu);
  const CVec3 bm = Fb * mu;
  const CVec3 am = Fa * mu;
  const std::complex<double> d =
      dot(bm, Fc_plus * am) + dot(bm, Fc_minus * am);
  return -aA * aB * d.real();
}

struct NonresonantSetup {
  const Sides* sides;
  std::array<BracketTerm, 4> terms;
  double prefactor;   // 1/(2 pi) for the pair form, 1/pi for the closed form
  double decay_rate;  // smallest positive exponent among active terms
};

QuadResult nonresonant_integral(const NonresonantSetup& setup,
                                const PolarizabilityModel& A,
                                const PolarizabilityModel& B,
                                const PolarizabilityModel& C,
                                const QuadratureSpec& spec,
                                const PotentialOptions& opts) {
  const double frozen = alpha_product(A, B, C, 0.0);
  const auto integrand = [&](double u) {
    const double ap = opts.alpha == AlphaEvaluation::FrozenStatic
                          ? frozen
                          : alpha_product(A, B, C, u);
    return ap * bracket_contraction(*setup.sides, u, setup.terms);
  };
  auto q = integrate_semi_infinite(integrand, setup.decay_rate, spec);
  q.value *= setup.prefactor;
  q.error *= setup.prefactor;
  return q;
}

QuadResult pair_nonresonant(const Sides& s, const PolarizabilityModel& A,
                            const PolarizabilityModel& B,
                            const PolarizabilityModel& C,
                            const QuadratureSpec& spec,
                            const PotentialOptions& opts) {
  NonresonantSetup setup;
  setup.sides = &s;
  setup.terms = pair_bracket_terms(s.a, s.b, s.c);
  setup.prefactor = 1.0 / (2.0 * std::numbers::pi);
  double decay = s.a + s.b + s.c;
  for (const auto& t : setup.terms) {
    if (t.weight == 0.0) continue;
    const double e = t.sign[0] * s.a + t.sign[1] * s.b + t.sign[2] * s.c;
    decay = std::min(decay, e);
  }
  setup.decay_rate = decay;
  return nonresonant_integral(setup, A, B, C, spec, opts);
}

EnergyBreakdown make_breakdown(double resonant, const QuadResult& nonres) {
  EnergyBreakdown e;
  e.resonant = resonant;
  e.nonresonant = nonres.value;
  e.total = resonant + nonres.value;
  e.quad_error = nonres.error;
  return e;
}

void check_models(const PolarizabilityModel& A, const PolarizabilityModel& B,
                  const PolarizabilityModel& C) {
  if (C.state != AtomState::Excited)
    throw ValidationError("atom C must be excited");
  if (A.state != AtomState::Ground || B.state != AtomState::Ground)
    throw ValidationError("atoms A and B must be in the ground state");
}

}  // namespace

std::array<BracketTerm, 4> pair_bracket_terms(double a, double b, double c) {
  // Exponents |a+b-c|, |a-b-c|, |a-b+c| resolve to a+b-c, b+c-a, a+c-b by
  // the triangle inequalities; the growing single-side factors are always
  // dominated by the remaining decaying pair.
  return {{
      {1.0, {+1, +1, +1}},
      {0.25 * (2.0 + sgn(a - c) + sgn(b - c)), {+1, +1, -1}},
      {-0.25 * (1.0 - sgn(a - c)), {-1, +1, +1}},
      {-0.25 * (1.0 - sgn(b - c)), {+1, -1, +1}},
  }};
}

EnergyBreakdown pair_energy(const AtomTriangle& t, const PolarizabilityModel& A,
                            const PolarizabilityModel& B,
                            const PolarizabilityModel& C,
                            const QuadratureSpec& spec,
                            const PotentialOptions& opts) {
  check_models(A, B, C);
  const Sides s = sides_of(t);
  if (C.mu_sq() == 0.0) return {};
  return make_breakdown(resonant_energy(s, A, B, C),
                        pair_nonresonant(s, A, B, C, spec, opts));
}

EnergyBreakdown three_body_closed(const AtomTriangle& t,
                                  const PolarizabilityModel& A,
                                  const PolarizabilityModel& B,
                                  const PolarizabilityModel& C,
                                  const QuadratureSpec& spec,
                                  const PotentialOptions& opts) {
  check_models(A, B, C);
  const Sides s = sides_of(t);
  if (C.mu_sq() == 0.0) return {};
  NonresonantSetup setup;
  setup.sides = &s;
  setup.terms = {{{1.0, {+1, +1, +1}},
                  {0.0, {+1, +1, +1}},
                  {0.0, {+1, +1, +1}},
                  {0.0, {+1, +1, +1}}}};
  setup.prefactor = 1.0 / std::numbers::pi;
  setup.decay_rate = s.a + s.b + s.c;
  return make_breakdown(resonant_energy(s, A, B, C),
                        nonresonant_integral(setup, A, B, C, spec, opts));
}

EnergyBreakdown three_body_symmetrized(const AtomTriangle& t,
                                       const PolarizabilityModel& A,
                                       const PolarizabilityModel& B,
                                       const PolarizabilityModel& C,
                                       const QuadratureSpec& spec,
                                       const PotentialOptions& opts) {
  check_models(A, B, C);
  const Sides s = sides_of(t);
  if (C.mu_sq() == 0.0) return {};

  QuadResult nonres{0.0, 0.0};
  Sides perm = s;
  for (int i = 0; i < 3; ++i) {
    const auto q = pair_nonresonant(perm, A, B, C, spec, opts);
    nonres.value += q.value;
    nonres.error += q.error;
    perm = cycled(perm);
  }
  nonres.value *= 2.0 / 3.0;
  nonres.error *= 2.0 / 3.0;

  return make_breakdown(resonant_energy(s, A, B, C), nonres);
}

std::vector<ScanRow> energy_scan(
    const std::vector<std::pair<double, AtomTriangle>>& grid,
    const PolarizabilityModel& A, const PolarizabilityModel& B,
    const PolarizabilityModel& C, const QuadratureSpec& spec, int threads) {
  std::vector<ScanRow> rows(grid.size());
  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      ScanRow& row = rows[i];
      row.parameter = grid[i].first;
      row.triangle = grid[i].second;
      try {
        row.energy = three_body_closed(row.triangle, A, B, C, spec);
        row.ok = true;
      } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

}  // namespace cp3
