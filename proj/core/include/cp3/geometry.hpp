#pragma once

#include "cp3/linalg.hpp"

namespace cp3 {

// Natural units: hbar = c = 1. Lengths are measured in units of the inverse
// reference wavenumber (by default the excited atom's k0), wavenumbers in
// units of the reference wavenumber. Every formula in the library depends
// only on dimensionless products k*R and u*R, so rescaling lengths by
// lambda and wavenumbers by 1/lambda leaves all outputs unchanged.
struct UnitSystem {
  double reference_wavenumber = 1.0;

  double length_to_internal(double physical_length) const {
    return physical_length * reference_wavenumber;
  }
  double wavenumber_to_internal(double physical_wavenumber) const {
    return physical_wavenumber / reference_wavenumber;
  }
};

// Triangle of atom positions A, B, C with the side-labelling convention
//   a = |r_B - r_C|,  b = |r_C - r_A|,  c = |r_B - r_A|
// (each side is named after the opposite atom).
struct AtomTriangle {
  Vec3 r_A, r_B, r_C;
  double a, b, c;
  Vec3 a_hat, b_hat, c_hat;   // unit vectors along r_B-r_C, r_C-r_A, r_B-r_A
  Vec3 a_vec() const { return a_hat * a; }
  Vec3 b_vec() const { return b_hat * b; }
  Vec3 c_vec() const { return c_hat * c; }
};

// Throws CoincidentAtoms if any pair distance < 1e-12, CollinearAtoms if a
// triangle inequality holds with margin < 1e-9 of the perimeter.
AtomTriangle triangle_from_positions(const Vec3& r_A, const Vec3& r_B, const Vec3& r_C);

// Uniform dilation about r_A; sides scale by lambda, unit vectors unchanged.
AtomTriangle scale_triangle(const AtomTriangle& t, double lambda);

}  // namespace cp3
