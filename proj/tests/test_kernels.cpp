#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cp3/errors.hpp"
#include "cp3/kernels.hpp"
#include "cp3/oracle.hpp"
#include "test_util.hpp"

using namespace cp3;
using test::mat_err;
using test::random_rotation;
using test::random_unit;

namespace {

// Independent assembly of F[cos(kR)/R] from the textbook transverse /
// longitudinal split:
//   (1 - RhatRhat) k^2 cos(kR)/R - (1 - 3 RhatRhat)(k sin(kR)/R^2 + cos(kR)/R^3)
Mat3 explicit_cos_bracket(double k, const Vec3& R_vec) {
  const double R = norm(R_vec);
  const Vec3 rh = normalized(R_vec);
  const Mat3 I = Mat3::identity();
  const Mat3 P = outer(rh, rh);
  return (I - P) * (k * k * std::cos(k * R) / R) -
         (I - P * 3.0) *
             (k * std::sin(k * R) / (R * R) + std::cos(k * R) / (R * R * R));
}

}  // namespace

TEST_CASE("radial kernel derivatives match central differences") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uR(0.3, 4.0), up(0.2, 3.0);
  const RadialKernel kernels[] = {
      RadialKernel::inverse_r(), RadialKernel::cos_over_r(1.7),
      RadialKernel::sin_over_r(2.3), RadialKernel::exp_over_r(1.1),
      RadialKernel::exp_over_r(-0.8)};
  for (const auto& ker : kernels) {
    for (int trial = 0; trial < 20; ++trial) {
      const double R = uR(rng);
      const double h = 1e-5 * R;
      const auto d = ker.eval(R);
      const auto p = ker.eval(R + h), m = ker.eval(R - h);
      CHECK(test::rel_err((p.g - m.g) / (2 * h), d.dg, 1e-12) < 1e-7);
      CHECK(test::rel_err((p.g - 2 * d.g + m.g) / (h * h), d.d2g, 1e-12) <
            1e-4);
    }
  }
}

TEST_CASE("f_apply of 1/R is the static dipole tensor") {
  const Vec3 R{0.0, 0.0, 2.0};
  const Mat3 T = f_apply(RadialKernel::inverse_r(), R);
  // diag(-1,-1,2)/R^3 for R along z
  CHECK(T(0, 0) == doctest::Approx(-1.0 / 8.0).epsilon(1e-14));
  CHECK(T(1, 1) == doctest::Approx(-1.0 / 8.0).epsilon(1e-14));
  CHECK(T(2, 2) == doctest::Approx(2.0 / 8.0).epsilon(1e-14));
  CHECK(std::abs(T(0, 1)) + std::abs(T(0, 2)) + std::abs(T(1, 2)) < 1e-16);
  CHECK(std::abs(T.trace()) < 1e-15);  // harmonic away from the origin
}

TEST_CASE("cos kernel at k=0 degenerates to 1/R") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 R = random_unit(rng) * 1.7;
    CHECK(mat_err(f_apply(RadialKernel::cos_over_r(0.0), R),
                  f_apply(RadialKernel::inverse_r(), R)) < 1e-14);
  }
}

TEST_CASE("f_apply agrees with the finite-difference assembly") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> uR(0.5, 3.0);
  const RadialKernel kernels[] = {
      RadialKernel::inverse_r(), RadialKernel::cos_over_r(1.3),
      RadialKernel::sin_over_r(0.9), RadialKernel::exp_over_r(2.0),
      RadialKernel::exp_over_r(-0.5)};
  for (const auto& ker : kernels) {
    for (int trial = 0; trial < 20; ++trial) {
      const Vec3 R = random_unit(rng) * uR(rng);
      const double h = 1e-4 * norm(R);
      CHECK(mat_err(f_apply(ker, R), fd_f_apply(ker, R, h)) < 1e-6);
    }
  }
}

TEST_CASE("f_apply is symmetric and rotation covariant") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 R = random_unit(rng) * 1.9;
    const auto ker = RadialKernel::sin_over_r(1.4);
    const Mat3 T = f_apply(ker, R);
    CHECK(asymmetry(T) < 1e-15 * std::max(1.0, max_abs(T)));
    const Mat3 Q = random_rotation(rng);
    const Mat3 rot = Q * T * Q.transposed();
    CHECK(mat_err(f_apply(ker, Q * R), rot) < 1e-12);
  }
}

TEST_CASE("f_apply rejects zero separation") {
  CHECK_THROWS_AS(f_apply(RadialKernel::inverse_r(), Vec3{0, 0, 0}),
                  ZeroRadius);
  CHECK_THROWS_AS(f_apply(RadialKernel::inverse_r(), Vec3{1e-13, 0, 0}),
                  ZeroRadius);
}

TEST_CASE("complex exponential kernel splits into cos and sin parts") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 R = random_unit(rng) * 2.3;
    const double k = 1.2;
    for (int sign : {+1, -1}) {
      const CMat3 T = f_apply_exp_ik(k, R, sign);
      const Mat3 Tc = f_apply(RadialKernel::cos_over_r(k), R);
      const Mat3 Ts = f_apply(RadialKernel::sin_over_r(k), R);
      for (int i = 0; i < 9; ++i) {
        CHECK(std::abs(T.m[i].real() - Tc.m[i]) < 1e-13);
        CHECK(std::abs(T.m[i].imag() - sign * Ts.m[i]) < 1e-13);
      }
    }
  }
}

TEST_CASE("nonresonant coupling tensor matches the explicit bracket") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Vec3 c = random_unit(rng) * 1.8;
    const double k = 0.7, kp = 1.9;
    const Mat3 got = potential_tensor_nonresonant(k, kp, c);
    const Mat3 ref =
        (explicit_cos_bracket(k, c) + explicit_cos_bracket(kp, c)) * (-0.5);
    CHECK(mat_err(got, ref) < 1e-13);
    // symmetric under wavenumber exchange
    CHECK(mat_err(potential_tensor_nonresonant(kp, k, c), got) < 1e-15);
  }
}

TEST_CASE("static limit of the coupling tensor is (1 - 3 chat chat)/c^3") {
  const Vec3 c{0, 0, 1.5};
  const Mat3 T = potential_tensor_nonresonant(0.0, 0.0, c);
  const double c3 = 1.5 * 1.5 * 1.5;
  CHECK(T(0, 0) == doctest::Approx(1.0 / c3).epsilon(1e-13));
  CHECK(T(1, 1) == doctest::Approx(1.0 / c3).epsilon(1e-13));
  CHECK(T(2, 2) == doctest::Approx(-2.0 / c3).epsilon(1e-13));
}

TEST_CASE("resonant coupling tensor is the degenerate nonresonant one") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 c = random_unit(rng) * 2.1;
    const double k0 = 1.3;
    CHECK(mat_err(potential_tensor_resonant(k0, c),
                  potential_tensor_nonresonant(k0, k0, c)) < 1e-15);
    CHECK(mat_err(potential_tensor_resonant(k0, c),
                  f_apply(RadialKernel::cos_over_r(k0), c) * (-1.0)) < 1e-15);
  }
}

TEST_CASE("triple contraction: identity, cyclicity, explicit sum") {
  const Mat3 I = Mat3::identity();
  CHECK(triple_contraction(I, I, I) == doctest::Approx(3.0));

  std::mt19937 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    Mat3 A, B, C;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        std::uniform_real_distribution<double> u(-1, 1);
        A(i, j) = A(j, i) = u(rng);
        B(i, j) = B(j, i) = u(rng);
        C(i, j) = C(j, i) = u(rng);
      }
    const double v = triple_contraction(C, B, A);
    // brute-force index sum
    double s = 0.0;
    for (int l = 0; l < 3; ++l)
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) s += C(l, m) * B(l, n) * A(m, n);
    CHECK(v == doctest::Approx(s).epsilon(1e-13));
    CHECK(triple_contraction(A, C, B) == doctest::Approx(v).epsilon(1e-12));
    CHECK(triple_contraction(B, A, C) == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("triple contraction rejects asymmetric inputs") {
  Mat3 bad = Mat3::identity();
  bad(0, 1) = 0.5;  // (1,0) stays 0
  const Mat3 I = Mat3::identity();
  CHECK_THROWS_AS(triple_contraction(bad, I, I), AsymmetricInput);
}

TEST_CASE("dipole contraction: explicit four-index sum and isotropic mean") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(-1, 1);
  Mat3 A, B, C;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      A(i, j) = A(j, i) = u(rng);
      B(i, j) = B(j, i) = u(rng);
      C(i, j) = C(j, i) = u(rng);
    }
  const Vec3 mu{0.3, -0.7, 0.5};

  double s = 0.0;
  for (int l = 0; l < 3; ++l)
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        for (int p = 0; p < 3; ++p)
          s += C(l, m) * B(l, n) * A(m, p) * mu[n] * mu[p];
  CHECK(dipole_contraction(C, B, A, mu) == doctest::Approx(s).epsilon(1e-13));

  CHECK(dipole_contraction(C, B, A, Vec3{0, 0, 0}) == 0.0);
  const Mat3 I = Mat3::identity();
  CHECK(dipole_contraction(I, I, I, mu) ==
        doctest::Approx(dot(mu, mu)).epsilon(1e-14));

  // Averaging the dipole direction over the sphere replaces mu_n mu_p by
  // |mu|^2 delta_np / 3, i.e. reduces to the triple contraction.
  double acc = 0.0;
  const int N = 1000000;
  for (int i = 0; i < N; ++i)
    acc += dipole_contraction(C, B, A, random_unit(rng));
  const double mc = acc / N;
  const double ref = triple_contraction(C, B, A) / 3.0;
  CHECK(test::rel_err(mc, ref) < 5e-3);
}
