#include "cp3/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include "cp3/correlations.hpp"
#include "cp3/errors.hpp"
#include "cp3/geometry.hpp"
#include "cp3/kernels.hpp"
#include "cp3/oracle.hpp"
#include "cp3/polarizability.hpp"
#include "cp3/potentials.hpp"

namespace cp3 {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Unsupported: return "unsupported";
  }
  return "?";
}

bool all_passed(const std::vector<CheckResult>& report) {
  for (const auto& c : report)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

namespace {

using Rng = std::mt19937;

Vec3 random_unit(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  return normalized(v);
}

Mat3 random_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double q[4] = {n(rng), n(rng), n(rng), n(rng)};
  double s = 0.0;
  for (double x : q) s += x * x;
  s = std::sqrt(s);
  for (double& x : q) x /= s;
  const double w = q[0], x = q[1], y = q[2], z = q[3];
  Mat3 R;
  R(0, 0) = 1 - 2 * (y * y + z * z);
  R(0, 1) = 2 * (x * y - w * z);
  R(0, 2) = 2 * (x * z + w * y);
  R(1, 0) = 2 * (x * y + w * z);
  R(1, 1) = 1 - 2 * (x * x + z * z);
  R(1, 2) = 2 * (y * z - w * x);
  R(2, 0) = 2 * (x * z - w * y);
  R(2, 1) = 2 * (y * z + w * x);
  R(2, 2) = 1 - 2 * (x * x + y * y);
  return R;
}

// Random triangle scaled so that the perimeter hits the target, with a
// shape margin away from collinearity.
AtomTriangle random_triangle(Rng& rng, double perimeter) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const Vec3 pa{u(rng), u(rng), u(rng)};
    const Vec3 pb{u(rng), u(rng), u(rng)};
    const Vec3 pc{u(rng), u(rng), u(rng)};
    try {
      AtomTriangle t = triangle_from_positions(pa, pb, pc);
      const double p = t.a + t.b + t.c;
      if (std::min({t.a + t.b - t.c, t.b + t.c - t.a, t.c + t.a - t.b}) <
          0.08 * p)
        continue;
      return scale_triangle(t, perimeter / p);
    } catch (const Error&) {
      continue;
    }
  }
}

// The explicit dipole-coupling bracket, coded term by term, independent of
// the (g', g'') reduction inside f_apply.
Mat3 explicit_bracket(double k, double kprime, const Vec3& r_vec) {
  const double r = norm(r_vec);
  const Vec3 rhat = r_vec * (1.0 / r);
  const Mat3 p1 = Mat3::identity() - outer(rhat, rhat);
  const Mat3 p3 = Mat3::identity() - outer(rhat, rhat) * 3.0;
  const auto one = [&](double kk) {
    return p1 * (kk * kk * std::cos(kk * r) / r) -
           p3 * (kk * std::sin(kk * r) / (r * r) +
                 std::cos(kk * r) / (r * r * r));
  };
  return (one(k) + one(kprime)) * (-0.5);
}

double rel_err(const Mat3& got, const Mat3& ref, double floor_frac = 0.0) {
  const double scale = max_abs(ref);
  double worst = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double denom =
        std::max(std::abs(ref.m[i]), std::max(floor_frac * scale, 1e-300));
    worst = std::max(worst, std::abs(got.m[i] - ref.m[i]) / denom);
  }
  return worst;
}

struct Runner {
  std::vector<CheckResult> report;

  void run(const std::string& name, double threshold,
           const std::function<double()>& body) {
    CheckResult c;
    c.name = name;
    c.threshold = threshold;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.measured = body();
      c.status = c.measured <= threshold ? CheckStatus::Pass : CheckStatus::Fail;
    } catch (const std::exception& e) {
      c.status = CheckStatus::Fail;
      c.note = e.what();
    }
    c.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report.push_back(std::move(c));
  }
};

PolarizabilityModel ground_atom(double k_res, const Vec3& mu) {
  return {AtomState::Ground, k_res, mu};
}
PolarizabilityModel excited_atom(double k_res, const Vec3& mu) {
  return {AtomState::Excited, k_res, mu};
}

}  // namespace

std::vector<CheckResult> run_verification_suite(const VerifyOptions& opts) {
  Runner r;
  Rng rng(opts.seed);
  const QuadratureSpec spec = opts.spec;

  // --- F operator against central finite differences, all kernel families.
  r.run("f_operator_vs_finite_difference", 1e-6, [&] {
    std::uniform_real_distribution<double> arg(0.1, 10.0);
    std::uniform_real_distribution<double> rad(0.3, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double R = rad(rng);
      const Vec3 rv = random_unit(rng) * R;
      const double param = arg(rng) / R;  // dimensionless argument in [0.1,10]
      RadialKernel k;
      switch (i % 4) {
        case 0: k = RadialKernel::cos_over_r(param); break;
        case 1: k = RadialKernel::sin_over_r(param); break;
        case 2: k = RadialKernel::exp_over_r(param); break;
        default: k = RadialKernel::inverse_r(); break;
      }
      const double scale = k.family == RadialKernel::Family::InverseR
                               ? R
                               : std::min(R, 1.0 / param);
      // Richardson pair: cancels the h^2 truncation term while h stays
      // large enough that subtractive roundoff is negligible.
      const double h = 1e-2 * scale;
      const Mat3 coarse = fd_f_apply(k, rv, h);
      const Mat3 fine = fd_f_apply(k, rv, 0.5 * h);
      const Mat3 fd = (fine * 4.0 - coarse) * (1.0 / 3.0);
      worst = std::max(worst, rel_err(f_apply(k, rv), fd, 1e-3));
    }
    return worst;
  });

  // --- Explicit coupling-tensor bracket against the (g', g'') reduction.
  r.run("explicit_bracket_vs_f_reduction", 1e-12, [&] {
    std::uniform_real_distribution<double> kd(0.0, 5.0);
    std::uniform_real_distribution<double> rad(0.3, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec3 rv = random_unit(rng) * rad(rng);
      const double k = kd(rng), kp = kd(rng);
      worst = std::max(worst, rel_err(potential_tensor_nonresonant(k, kp, rv),
                                      explicit_bracket(k, kp, rv), 1e-3));
    }
    return worst;
  });

  // --- Scalar correlation kernel: PV route vs imaginary-frequency route.
  r.run("pv_vs_imaginary_frequency_scalar", 1e-6, [&] {
    const double k0 = 1.0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double x = 0.5 * std::pow(30.0 / 0.5, i / 49.0);  // k0 (R+R')
      const double R = x / 1.7, Rp = 0.7 * x / 1.7;
      const double s = R + Rp;
      const auto pv = integrate_pv(
          [&](double k) { return std::sin(k * s) / (k - k0); }, k0,
          std::numbers::pi / s, spec);
      const double lhs = (2.0 / std::numbers::pi) * pv.value +
                         4.0 * std::sin(k0 * R) * std::sin(k0 * Rp);
      const auto lap = integrate_semi_infinite(
          [&](double u) { return std::exp(-u * s) / (k0 * k0 + u * u); },
          s, spec);
      const double rhs = -(2.0 * k0 / std::numbers::pi) * lap.value +
                         2.0 * std::cos(k0 * (R - Rp));
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-3));
    }
    return worst;
  });

  // --- Box-mode lattice sum vs the analytic nonresonant tensor.
  r.run("box_mode_sum_vs_analytic", 0.02, [&] {
    const SourceAtom atom{{0.0, 0.0, 0.0},
                          excited_atom(1.0, normalized(Vec3{0.3, -0.5, 0.8}))};
    const Vec3 pts[5][2] = {
        {{1.0, 0.1, 0.3}, {0.2, 0.9, -0.4}},
        {{0.8, -0.4, 0.2}, {-0.5, 0.6, 0.7}},
        {{1.1, 0.5, -0.2}, {0.4, -0.7, 0.8}},
        {{0.9, 0.2, 0.6}, {-0.3, 0.8, 0.3}},
        {{0.7, -0.6, 0.4}, {0.6, 0.5, -0.6}},
    };
    double worst = 0.0;
    for (const auto& g : pts) {
      const Vec3 rr = g[0], rp = g[1];
      BoxSpec box;
      box.L = 10.5 * std::max(norm(rr), norm(rp));
      box.k_cut = 160.0 / std::min(norm(rr), norm(rp));
      const Mat3 lattice = box_mode_sum_extrapolated(box, rr, rp, atom);
      const Mat3 analytic = correlation_tensor(rr, rp, atom, spec).nonresonant_part;
      worst = std::max(worst, rel_err(lattice, analytic, 0.05));
    }
    return worst;
  });

  // --- Partial symmetrization equals the closed form.
  r.run("symmetrized_vs_closed", 1e-8, [&] {
    QuadratureSpec tight = spec;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-16;
    std::uniform_real_distribution<double> logp(std::log(0.5), std::log(30.0));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const AtomTriangle t = random_triangle(rng, std::exp(logp(rng)));
      const auto A = ground_atom(1.3, random_unit(rng));
      const auto B = ground_atom(1.45, random_unit(rng));
      const auto C = excited_atom(1.0, random_unit(rng));
      const auto closed = three_body_closed(t, A, B, C, tight);
      const auto sym = three_body_symmetrized(t, A, B, C, tight);
      worst = std::max(worst,
                       std::abs(sym.nonresonant - closed.nonresonant) /
                           std::abs(closed.nonresonant));
      if (sym.resonant != closed.resonant) worst = 1.0;  // shared code path
    }
    return worst;
  });

  // --- (3,4,5) fixture: the cyclic sum of the sign-bracket terms keeps only
  // the perimeter exponential.
  r.run("sign_bracket_cancellation_345", 1e-12, [&] {
    const double sides[3][3] = {{3, 4, 5}, {4, 5, 3}, {5, 3, 4}};
    std::map<double, double> weight_by_exponent;
    for (const auto& s : sides) {
      for (const auto& term : pair_bracket_terms(s[0], s[1], s[2])) {
        const double e =
            term.sign[0] * s[0] + term.sign[1] * s[1] + term.sign[2] * s[2];
        weight_by_exponent[e] += term.weight;
      }
    }
    double worst = 0.0;
    for (const auto& [e, w] : weight_by_exponent) {
      if (std::abs(e - 12.0) < 1e-9) continue;  // perimeter term survives
      worst = std::max(worst, std::abs(w) / 3.0);
    }
    if (std::abs(weight_by_exponent[12.0] - 3.0) > 1e-12) worst = 1.0;
    return worst;
  });

  // --- Cyclic relabeling invariance of the closed nonresonant term.
  r.run("cyclic_relabeling_invariance", 1e-10, [&] {
    QuadratureSpec tight = spec;
    tight.rel_tol = 1e-12;
    std::uniform_real_distribution<double> logp(std::log(2.0), std::log(20.0));
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const AtomTriangle t = random_triangle(rng, std::exp(logp(rng)));
      const auto A = ground_atom(1.3, random_unit(rng));
      const auto B = ground_atom(1.45, random_unit(rng));
      const auto C = excited_atom(1.0, random_unit(rng));
      const double ref = three_body_closed(t, A, B, C, tight).nonresonant;

      // Independent assembly with the tensor slots cycled, through the
      // public kernel interface.
      const auto integrand = [&](double u) {
        const Mat3 Fa = f_apply(RadialKernel::exp_over_r(u), t.a_vec());
        const Mat3 Fb = f_apply(RadialKernel::exp_over_r(u), t.b_vec());
        const Mat3 Fc = f_apply(RadialKernel::exp_over_r(u), t.c_vec());
        return alpha_scalar_imag(A, u) * alpha_scalar_imag(B, u) *
               alpha_scalar_imag(C, u) * triple_contraction(Fa, Fc, Fb);
      };
      const auto q =
          integrate_semi_infinite(integrand, t.a + t.b + t.c, tight);
      const double cycled_val = q.value / std::numbers::pi;
      worst = std::max(worst, std::abs(cycled_val - ref) / std::abs(ref));

      // A<->B relabeling through the public potential interface.
      const AtomTriangle swapped =
          triangle_from_positions(t.r_B, t.r_A, t.r_C);
      const double swapped_val =
          three_body_closed(swapped, B, A, C, tight).nonresonant;
      worst = std::max(worst, std::abs(swapped_val - ref) / std::abs(ref));
    }
    return worst;
  });

  // --- Scaling law with frozen static polarizabilities.
  r.run("scaling_law_frozen_alpha", 1e-6, [&] {
    const AtomTriangle t = random_triangle(rng, 6.0);
    const auto A = ground_atom(1.3, random_unit(rng));
    const auto B = ground_atom(1.45, random_unit(rng));
    const auto C = excited_atom(1.0, random_unit(rng));
    PotentialOptions frozen;
    frozen.alpha = AlphaEvaluation::FrozenStatic;
    const double base = three_body_closed(t, A, B, C, spec, frozen).nonresonant;
    double worst = 0.0;
    for (double lambda : {2.0, 3.0}) {
      const double scaled =
          three_body_closed(scale_triangle(t, lambda), A, B, C, spec, frozen)
              .nonresonant;
      worst = std::max(worst,
                       std::abs(scaled * std::pow(lambda, 10.0) - base) /
                           std::abs(base));
    }
    return worst;
  });

  // --- Equilateral sweep: resonant part oscillates, nonresonant does not.
  r.run("resonant_oscillation_census", 0.0, [&] {
    const auto A = ground_atom(1.3, Vec3{0, 0, 1});
    const auto B = ground_atom(1.45, Vec3{0, 0, 1});
    const auto C = excited_atom(1.0, normalized(Vec3{0.2, 0.4, 0.9}));
    int res_sign_changes = 0;
    bool nonres_sign_constant = true;
    double prev_res = 0.0, first_nonres = 0.0;
    for (int i = 0; i < 256; ++i) {
      const double d = 0.5 + (20.0 - 0.5) * i / 255.0;
      const AtomTriangle t = triangle_from_positions(
          {0, 0, 0}, {d, 0, 0}, {0.5 * d, 0.5 * std::sqrt(3.0) * d, 0});
      const auto e = three_body_closed(t, A, B, C, spec);
      if (i == 0) {
        first_nonres = e.nonresonant;
      } else {
        if (e.resonant * prev_res < 0.0) ++res_sign_changes;
        if (e.nonresonant * first_nonres <= 0.0) nonres_sign_constant = false;
      }
      prev_res = e.resonant;
    }
    // measured = 0 on success; encode failures as positive counts.
    if (res_sign_changes < 5) return 1.0 + (5 - res_sign_changes);
    if (!nonres_sign_constant) return 0.5;
    return 0.0;
  });

  // --- Degenerate guards.
  r.run("degenerate_guards", 0.0, [&] {
    const auto A = ground_atom(1.3, Vec3{0, 0, 1});
    const auto B = ground_atom(1.45, Vec3{0, 0, 1});
    const auto C_nodip = excited_atom(1.0, Vec3{0, 0, 0});
    const AtomTriangle t = triangle_from_positions({0, 0, 0}, {3, 0, 0}, {0, 4, 0});
    const auto e = three_body_closed(t, A, B, C_nodip, spec);
    if (e.resonant != 0.0 || e.nonresonant != 0.0 || e.total != 0.0) return 1.0;

    bool collinear_raised = false;
    try {
      (void)triangle_from_positions({0, 0, 0}, {1, 0, 0}, {2, 0, 0});
    } catch (const CollinearAtoms&) {
      collinear_raised = true;
    }
    if (!collinear_raised) return 1.0;

    bool resonance_raised = false;
    try {
      (void)alpha_scalar_real(A, A.k_res * (1.0 + 1e-9));
    } catch (const NearResonance&) {
      resonance_raised = true;
    }
    return resonance_raised ? 0.0 : 1.0;
  });

  // --- Structural invariants.
  r.run("f_apply_symmetry_and_rotation_covariance", 1e-12, [&] {
    std::uniform_real_distribution<double> kd(0.1, 5.0);
    std::uniform_real_distribution<double> rad(0.3, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec3 rv = random_unit(rng) * rad(rng);
      const auto kern = RadialKernel::cos_over_r(kd(rng));
      const Mat3 T = f_apply(kern, rv);
      worst = std::max(worst, asymmetry(T) / std::max(max_abs(T), 1.0));
      const Mat3 Q = random_rotation(rng);
      const Mat3 TQ = f_apply(kern, Q * rv);
      worst = std::max(worst, rel_err(TQ, Q * T * Q.transposed(), 1e-2));
    }
    return worst;
  });

  r.run("correlation_pv_vs_laplace_tensor", 1e-6, [&] {
    const SourceAtom atom{{0.0, 0.0, 0.0},
                          excited_atom(1.0, normalized(Vec3{0.1, 0.7, 0.7}))};
    std::uniform_real_distribution<double> logx(std::log(1.0), std::log(20.0));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double x = std::exp(logx(rng));
      const Vec3 rr = random_unit(rng) * (0.6 * x);
      const Vec3 rp = random_unit(rng) * (0.4 * x);
      const auto lap = correlation_tensor(rr, rp, atom, spec);
      const auto pv = correlation_tensor_pv(rr, rp, atom, spec);
      worst = std::max(worst, rel_err(pv.tensor, lap.tensor, 1e-3));
    }
    return worst;
  });

  r.run("pv_window_halving", 1e-8, [&] {
    const double k0 = 1.0, s = 5.0;
    const auto f = [&](double k) { return std::sin(k * s) / (k - k0); };
    QuadratureSpec w1 = spec;
    w1.pv_window = k0 / 100.0;
    QuadratureSpec w2 = spec;
    w2.pv_window = k0 / 200.0;
    const double v1 = integrate_pv(f, k0, std::numbers::pi / s, w1).value;
    const double v2 = integrate_pv(f, k0, std::numbers::pi / s, w2).value;
    return std::abs(v1 - v2) / std::max(std::abs(v1), 1e-3);
  });

  r.run("polarization_sum_identity", 1e-14, [&] {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec3 kv = random_unit(rng) * 2.0;
      const auto m1 = FieldMode::make(kv, 1);
      const auto m2 = FieldMode::make(kv, 2);
      const Vec3 khat = normalized(kv);
      const Mat3 sum = outer(m1.e_hat, m1.e_hat) + outer(m2.e_hat, m2.e_hat);
      const Mat3 expect = Mat3::identity() - outer(khat, khat);
      worst = std::max(worst, max_abs(sum - expect));
    }
    return worst;
  });

  r.run("correlation_exchange_symmetry", 1e-10, [&] {
    const SourceAtom atom{{0.0, 0.0, 0.0},
                          excited_atom(1.0, normalized(Vec3{0.4, -0.2, 0.9}))};
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Vec3 rr = random_unit(rng) * 1.5;
      const Vec3 rp = random_unit(rng) * 2.0;
      const Mat3 fwd = correlation_tensor(rr, rp, atom, spec).tensor;
      const Mat3 rev = correlation_tensor(rp, rr, atom, spec).tensor;
      worst = std::max(worst, rel_err(rev.transposed(), fwd, 1e-3));
    }
    return worst;
  });

  // The resonant mode sum has a pole on the continuum; a naive lattice sum
  // is ill-defined, so requesting it is reported as unsupported rather
  // than returning a number.
  {
    CheckResult c;
    c.name = "box_mode_sum_resonant";
    c.status = CheckStatus::Unsupported;
    c.note = "pole at k0 on the mode continuum; validated via the PV route";
    r.report.push_back(c);
  }

  return r.report;
}

}  // namespace cp3
