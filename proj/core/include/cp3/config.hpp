#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cp3/geometry.hpp"
#include "cp3/linalg.hpp"
#include "cp3/oracle.hpp"
#include "cp3/polarizability.hpp"
#include "cp3/quadrature.hpp"

namespace cp3 {

struct AtomConfig {
  Vec3 position{};
  double k_res = 1.0;
  Vec3 mu{0.0, 0.0, 1.0};
  bool excited = false;
};

struct SweepConfig {
  std::string family = "equilateral";
  double from = 0.1;
  double to = 10.0;
  int steps = 64;
  bool log_spacing = true;

  std::vector<double> values() const;
};

// Fully-resolved run configuration. Lengths in the config document are in
// units of the inverse reference wavenumber (the excited atom's resonance
// unless a units block overrides it); internally the reference wavenumber
// is 1.
struct RunConfig {
  std::array<AtomConfig, 3> atoms;  // A, B, C
  int excited_index = 2;
  std::optional<SweepConfig> sweep;
  QuadratureSpec quadrature;
  BoxSpec box;
  std::vector<std::pair<Vec3, Vec3>> correlate_points;
  std::string output_format = "json";  // "json" or "csv" (tables)
  std::string output_path;             // empty = stdout
  std::string resolved;                // fully-resolved config as JSON text

  PolarizabilityModel model(int i) const;
  AtomTriangle triangle() const;
};

// Parses and validates a JSON config document. Throws SchemaError (with
// the offending field path) or ValidationError.
RunConfig parse_config(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);

enum class Command { Correlate, Potential, Scan, Verify };

// Executes a command against a parsed config, writing the artifact to the
// configured path (or the given stream). Returns the process exit status:
// 0 success, 1 computation error, 3 verification failures.
int run_command(Command cmd, const RunConfig& cfg, std::ostream& fallback_out,
                int threads = 1);

}  // namespace cp3
