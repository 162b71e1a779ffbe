#include "cp3/geometry.hpp"

#include "cp3/errors.hpp"

namespace cp3 {

AtomTriangle triangle_from_positions(const Vec3& r_A, const Vec3& r_B, const Vec3& r_C) {
  const Vec3 av = r_B - r_C;
  const Vec3 bv = r_C - r_A;
  const Vec3 cv = r_B - r_A;
  const double a = norm(av);
  const double b = norm(bv);
  const double c = norm(cv);

  if (a < 1e-12 || b < 1e-12 || c < 1e-12)
    throw CoincidentAtoms("pair distance below 1e-12");

  const double perimeter = a + b + c;
  const double margin = std::min({a + b - c, b + c - a, c + a - b});
  if (margin < 1e-9 * perimeter)
    throw CollinearAtoms("triangle inequality margin below 1e-9 of perimeter");

  AtomTriangle t;
  t.r_A = r_A;
  t.r_B = r_B;
  t.r_C = r_C;
  t.a = a;
  t.b = b;
  t.c = c;
  t.a_hat = av * (1.0 / a);
  t.b_hat = bv * (1.0 / b);
  t.c_hat = cv * (1.0 / c);
  return t;
}

AtomTriangle scale_triangle(const AtomTriangle& t, double lambda) {
  if (!(lambda > 0.0)) throw NonPositiveScale("scale factor must be > 0");
  return triangle_from_positions(t.r_A,
                                 t.r_A + (t.r_B - t.r_A) * lambda,
                                 t.r_A + (t.r_C - t.r_A) * lambda);
}

}  // namespace cp3
