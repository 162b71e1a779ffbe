#include "cp3/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "cp3/errors.hpp"

namespace cp3 {

namespace {

// Kronrod 15 abscissae on [0,1] side (symmetric) and weights; the embedded
// Gauss 7 rule uses the odd-index nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a, b;
  std::vector<double> value;
  double error;
};

// One G7/K15 evaluation on [a,b].
Panel gk15(const VecIntegrand& f, int n, double a, double b) {
  const double hl = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::vector<double> fv(static_cast<size_t>(n));
  std::vector<double> resk(static_cast<size_t>(n), 0.0);
  std::vector<double> resg(static_cast<size_t>(n), 0.0);

  for (int j = 0; j < 8; ++j) {
    const int copies = (j == 7) ? 1 : 2;
    for (int s = 0; s < copies; ++s) {
      const double x = mid + (s == 0 ? -1.0 : 1.0) * hl * kXgk[j];
      f(x, fv.data());
      for (int i = 0; i < n; ++i) {
        resk[i] += kWgk[j] * fv[i];
        if (j % 2 == 1) resg[i] += kWg[j / 2] * fv[i];
      }
    }
  }

  Panel p{a, b, {}, 0.0};
  p.value.resize(static_cast<size_t>(n));
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    p.value[i] = resk[i] * hl;
    err = std::max(err, std::abs((resk[i] - resg[i]) * hl));
  }
  p.error = err;
  return p;
}

double value_norm(const std::vector<Panel>& panels, int n) {
  double nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& p : panels) s += p.value[static_cast<size_t>(i)];
    nrm = std::max(nrm, std::abs(s));
  }
  return nrm;
}

VecQuadResult adapt(const VecIntegrand& f, int n,
                    std::vector<std::pair<double, double>> seeds,
                    const QuadratureSpec& spec, double extra_error) {
  std::vector<Panel> panels;
  panels.reserve(seeds.size());
  for (auto [a, b] : seeds) panels.push_back(gk15(f, n, a, b));

  int splits = 0;
  for (;;) {
    double total_err = extra_error;
    double splittable_err = 0.0;
    size_t worst = panels.size();
    double worst_err = -1.0;
    for (size_t i = 0; i < panels.size(); ++i) {
      total_err += panels[i].error;
      if (panels[i].b - panels[i].a > spec.min_panel) {
        splittable_err += panels[i].error;
        if (panels[i].error > worst_err) {
          worst_err = panels[i].error;
          worst = i;
        }
      }
    }
    const double tol =
        std::max(spec.abs_tol, spec.rel_tol * value_norm(panels, n));
    if (total_err <= tol) break;
    // Panels at the width floor hold irreducible (roundoff-level) error;
    // once the remaining splittable error is within tolerance, report the
    // estimate with its honest error instead of refining into noise.
    if (worst == panels.size() || splittable_err <= tol) break;
    if (splits >= spec.max_subdivisions)
      throw NoConvergence("adaptive quadrature: max_subdivisions exhausted");
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    panels[worst] = gk15(f, n, p.a, mid);
    panels.push_back(gk15(f, n, mid, p.b));
    ++splits;
  }

  VecQuadResult r;
  r.value.assign(static_cast<size_t>(n), 0.0);
  for (const auto& p : panels) {
    r.error += p.error;
    for (int i = 0; i < n; ++i) r.value[static_cast<size_t>(i)] += p.value[static_cast<size_t>(i)];
  }
  r.error += extra_error;
  return r;
}

VecIntegrand wrap_scalar(const Integrand& f) {
  return [&f](double x, double* out) { out[0] = f(x); };
}

}  // namespace

VecQuadResult integrate_adaptive_vec(const VecIntegrand& f, int n, double a,
                                     double b, const QuadratureSpec& spec) {
  return adapt(f, n, {{a, b}}, spec, 0.0);
}

QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              const QuadratureSpec& spec) {
  auto g = wrap_scalar(f);
  const auto r = integrate_adaptive_vec(g, 1, a, b, spec);
  return {r.value[0], r.error};
}

VecQuadResult integrate_semi_infinite_vec(const VecIntegrand& f, int n,
                                          double decay_rate,
                                          const QuadratureSpec& spec) {
  if (!(decay_rate > 0.0))
    throw DomainError("integrate_semi_infinite: decay_rate must be > 0");
  const double s = 1.0 / decay_rate;
  const double cut = 45.0 * s;  // exp(-45) ~ 3e-20 envelope
  std::vector<std::pair<double, double>> seeds = {
      {0.0, s}, {s, 5.0 * s}, {5.0 * s, 15.0 * s}, {15.0 * s, cut}};

  // Truncation bound from the envelope at the cut.
  std::vector<double> tail(static_cast<size_t>(n));
  f(cut, tail.data());
  double tail_mag = 0.0;
  for (double v : tail) tail_mag = std::max(tail_mag, std::abs(v));
  const double truncation = tail_mag * s;

  return adapt(f, n, seeds, spec, truncation);
}

QuadResult integrate_semi_infinite(const Integrand& f, double decay_rate,
                                   const QuadratureSpec& spec) {
  auto g = wrap_scalar(f);
  const auto r = integrate_semi_infinite_vec(g, 1, decay_rate, spec);
  return {r.value[0], r.error};
}

QuadResult integrate_pv(const Integrand& f, double k0, double half_period,
                        const QuadratureSpec& spec) {
  const double w = spec.pv_window > 0.0 ? spec.pv_window : k0 / 100.0;
  if (k0 <= w) throw PoleAtBoundary("integrate_pv: k0 <= pv_window");

  QuadratureSpec local = spec;
  local.abs_tol = std::max(spec.abs_tol, 1e-15);

  QuadResult total{0.0, 0.0};

  // [0, k0 - w]
  {
    const auto r = integrate_adaptive(f, 0.0, k0 - w, local);
    total.value += r.value;
    total.error += r.error;
  }

  // Symmetric window: the odd singular parts cancel in f(k0+t) + f(k0-t).
  {
    QuadratureSpec win = local;
    win.max_subdivisions = 60;  // paired integrand is smooth
    // Near t = 0 the pairing cancels two ~1/t terms, leaving roundoff noise
    // of order eps/t; panels below this width only resolve that noise, and
    // deep enough splits would round k0 +- t back onto the pole itself.
    win.min_panel = 1e-8 * w;
    // The window's own value can be far below the full result (the pairing
    // may cancel almost everything), in which case its relative tolerance
    // degenerates to abs_tol and sits under the cancellation noise floor.
    // Precision is only needed relative to the full principal value, so
    // allocate the window's absolute tolerance from the outer integral.
    win.abs_tol = std::max(
        local.abs_tol, 0.1 * spec.rel_tol * std::abs(total.value));
    const auto r = integrate_adaptive(
        [&](double t) { return f(k0 + t) + f(k0 - t); }, 0.0, w, win);
    total.value += r.value;
    total.error += r.error;
  }

  // Oscillatory tail: segments of one half period, alternating partial
  // sums accelerated by a repeated-averaging table.
  {
    const int max_terms = 96;
    std::vector<double> partial;
    partial.reserve(max_terms);
    double x = k0 + w;
    double running = 0.0;
    QuadratureSpec seg = local;
    seg.max_subdivisions = 200;
    double accel_prev = std::numeric_limits<double>::quiet_NaN();
    double accel = 0.0;
    double accel_err = std::numeric_limits<double>::infinity();
    for (int m = 0; m < max_terms; ++m) {
      const auto r = integrate_adaptive(f, x, x + half_period, seg);
      x += half_period;
      running += r.value;
      total.error += r.error;
      partial.push_back(running);

      if (partial.size() >= 4) {
        std::vector<double> t = partial;
        while (t.size() > 1) {
          for (size_t i = 0; i + 1 < t.size(); ++i)
            t[i] = 0.5 * (t[i] + t[i + 1]);
          t.pop_back();
        }
        accel = t[0];
        if (!std::isnan(accel_prev)) {
          accel_err = std::abs(accel - accel_prev);
          const double scale = std::max(std::abs(total.value + accel), 1.0);
          if (accel_err < std::max(spec.abs_tol, 0.1 * spec.rel_tol * scale) &&
              partial.size() >= 8)
            break;
        }
        accel_prev = accel;
      }
    }
    total.value += accel;
    total.error += accel_err;
  }

  return total;
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// E1(z) for Re z >= 0 via the Lentz continued fraction.
std::complex<double> expint_e1_cf(std::complex<double> z) {
  const double tiny = 1e-300;
  std::complex<double> b = z + 1.0;
  std::complex<double> c = 1.0 / tiny;
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 400; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace

double si(double x) {
  if (x < 0.0) return -si(-x);
  if (x == 0.0) return 0.0;
  if (x < 6.0) {
    // sum (-1)^n x^(2n+1) / ((2n+1)(2n+1)!)
    double c = x;  // x^(2n+1)/(2n+1)!
    double sum = x;
    for (int n = 1; n < 60; ++n) {
      c *= -x * x / ((2.0 * n) * (2.0 * n + 1.0));
      const double term = c / (2.0 * n + 1.0);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  const auto e1 = expint_e1_cf(std::complex<double>(0.0, x));
  return std::numbers::pi / 2.0 + e1.imag();
}

double ci(double x) {
  if (x <= 0.0) throw DomainError("ci requires x > 0");
  if (x < 6.0) {
    double c = 1.0;  // x^(2n)/(2n)!
    double sum = 0.0;
    for (int n = 1; n < 60; ++n) {
      c *= -x * x / ((2.0 * n - 1.0) * (2.0 * n));
      const double term = c / (2.0 * n);
      sum += term;
      if (std::abs(term) < 1e-17) break;
    }
    return kEulerGamma + std::log(x) + sum;
  }
  const auto e1 = expint_e1_cf(std::complex<double>(0.0, x));
  return -e1.real();
}

}  // namespace cp3
