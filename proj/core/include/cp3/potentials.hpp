#pragma once

#include <array>
#include <string>
#include <vector>

#include "cp3/geometry.hpp"
#include "cp3/polarizability.hpp"
#include "cp3/quadrature.hpp"

namespace cp3 {

struct EnergyBreakdown {
  double resonant = 0.0;
  double nonresonant = 0.0;
  double total = 0.0;
  double quad_error = 0.0;
};

// Whether the scalar polarizabilities inside the imaginary-frequency
// integral track u or stay frozen at their static values (used by the
// scaling-law checks).
enum class AlphaEvaluation { Dynamic, FrozenStatic };

struct PotentialOptions {
  AlphaEvaluation alpha = AlphaEvaluation::Dynamic;
};

// One term of the pair-energy exponential bracket: weight times
// exp(-u (sa*a + sb*b + sc*c)) with each s = +-1.
struct BracketTerm {
  double weight;
  std::array<int, 3> sign;  // ordered (a, b, c)
};

// The four bracket terms of the unsymmetrized pair energy at side lengths
// (a, b, c); absolute values of the exponents are resolved through the
// triangle inequalities. Exposed for the sign-cancellation checks.
std::array<BracketTerm, 4> pair_bracket_terms(double a, double b, double c);

// Interaction energy of ground-state atoms A and B dressed by the excited
// atom C (unsymmetrized). A and B enter through their scalar
// polarizabilities, C through its dipole vector and resonance.
EnergyBreakdown pair_energy(const AtomTriangle& t, const PolarizabilityModel& A,
                            const PolarizabilityModel& B,
                            const PolarizabilityModel& C,
                            const QuadratureSpec& spec,
                            const PotentialOptions& opts = {});

// Closed-form three-body potential: single perimeter exponential in the
// nonresonant integral plus the unsymmetrized resonant term.
EnergyBreakdown three_body_closed(const AtomTriangle& t,
                                  const PolarizabilityModel& A,
                                  const PolarizabilityModel& B,
                                  const PolarizabilityModel& C,
                                  const QuadratureSpec& spec,
                                  const PotentialOptions& opts = {});

// (2/3) * sum of the pair nonresonant energies over cyclic relabelings,
// plus the unsymmetrized resonant term; numerically equal to
// three_body_closed.
EnergyBreakdown three_body_symmetrized(const AtomTriangle& t,
                                       const PolarizabilityModel& A,
                                       const PolarizabilityModel& B,
                                       const PolarizabilityModel& C,
                                       const QuadratureSpec& spec,
                                       const PotentialOptions& opts = {});

struct ScanRow {
  double parameter = 0.0;
  AtomTriangle triangle;
  EnergyBreakdown energy;
  bool ok = false;
  std::string error;
};

// Closed-form potential on a family of triangles; per-row failures are
// reported in the row instead of aborting the scan.
std::vector<ScanRow> energy_scan(const std::vector<std::pair<double, AtomTriangle>>& grid,
                                 const PolarizabilityModel& A,
                                 const PolarizabilityModel& B,
                                 const PolarizabilityModel& C,
                                 const QuadratureSpec& spec,
                                 int threads = 1);

}  // namespace cp3
