#include "cp3/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cp3/errors.hpp"
#include "cp3/potentials.hpp"
#include "cp3/verify.hpp"

namespace cp3 {

using nlohmann::json;

namespace {

// Shortest round-trip decimal for CSV cells.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

const json* find(const json& j, const std::string& key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path + ": expected a number");
  return j.get<double>();
}

Vec3 vec3_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3)
    throw SchemaError(path + ": expected an array of 3 numbers");
  return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]"),
          number_at(j[2], path + "[2]")};
}

AtomConfig parse_atom(const json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path + ": expected an object");
  AtomConfig a;
  if (const json* p = find(j, "position")) a.position = vec3_at(*p, path + ".position");
  if (const json* p = find(j, "k_res")) a.k_res = number_at(*p, path + ".k_res");
  if (const json* p = find(j, "mu")) a.mu = vec3_at(*p, path + ".mu");
  if (const json* p = find(j, "excited")) {
    if (!p->is_boolean()) throw SchemaError(path + ".excited: expected a boolean");
    a.excited = p->get<bool>();
  }
  if (!(a.k_res > 0.0)) throw ValidationError(path + ".k_res must be > 0");
  return a;
}

json atom_to_json(const AtomConfig& a) {
  return json{{"position", {a.position.x, a.position.y, a.position.z}},
              {"k_res", a.k_res},
              {"mu", {a.mu.x, a.mu.y, a.mu.z}},
              {"excited", a.excited}};
}

}  // namespace

std::vector<double> SweepConfig::values() const {
  std::vector<double> v;
  v.reserve(static_cast<size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    v.push_back(log_spacing ? from * std::pow(to / from, f)
                            : from + (to - from) * f);
  }
  return v;
}

PolarizabilityModel RunConfig::model(int i) const {
  const AtomConfig& a = atoms[static_cast<size_t>(i)];
  return {a.excited ? AtomState::Excited : AtomState::Ground, a.k_res, a.mu};
}

AtomTriangle RunConfig::triangle() const {
  return triangle_from_positions(atoms[0].position, atoms[1].position,
                                 atoms[2].position);
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("top level: expected an object");

  RunConfig cfg;

  const json* atoms = find(doc, "atoms");
  if (!atoms) throw SchemaError("atoms: missing");
  const char* names[3] = {"A", "B", "C"};
  int excited_count = 0;
  for (int i = 0; i < 3; ++i) {
    const json* a = find(*atoms, names[i]);
    if (!a) throw SchemaError(std::string("atoms.") + names[i] + ": missing");
    cfg.atoms[static_cast<size_t>(i)] =
        parse_atom(*a, std::string("atoms.") + names[i]);
    if (cfg.atoms[static_cast<size_t>(i)].excited) {
      cfg.excited_index = i;
      ++excited_count;
    }
  }
  if (excited_count != 1)
    throw ValidationError("atoms: exactly one atom must be excited (found " +
                          std::to_string(excited_count) + ")");

  // Lengths come in units of 1/reference_wavenumber; default reference is
  // the excited atom's resonance, making it 1 internally.
  double ref = cfg.atoms[static_cast<size_t>(cfg.excited_index)].k_res;
  if (const json* units = find(doc, "units")) {
    if (const json* rw = find(*units, "reference_wavenumber"))
      ref = number_at(*rw, "units.reference_wavenumber");
    if (!(ref > 0.0))
      throw ValidationError("units.reference_wavenumber must be > 0");
  }
  for (auto& a : cfg.atoms) a.k_res /= ref;

  if (const json* sweep = find(doc, "sweep")) {
    SweepConfig s;
    if (const json* f = find(*sweep, "family")) {
      if (!f->is_string()) throw SchemaError("sweep.family: expected a string");
      s.family = f->get<std::string>();
    }
    if (s.family != "equilateral")
      throw ValidationError("sweep.family: only 'equilateral' is supported");
    if (const json* p = find(*sweep, "from")) s.from = number_at(*p, "sweep.from");
    if (const json* p = find(*sweep, "to")) s.to = number_at(*p, "sweep.to");
    if (const json* p = find(*sweep, "steps")) {
      if (!p->is_number_integer()) throw SchemaError("sweep.steps: expected an integer");
      s.steps = p->get<int>();
    }
    if (const json* p = find(*sweep, "spacing")) {
      if (!p->is_string()) throw SchemaError("sweep.spacing: expected a string");
      const auto sp = p->get<std::string>();
      if (sp != "log" && sp != "linear")
        throw ValidationError("sweep.spacing: must be 'log' or 'linear'");
      s.log_spacing = sp == "log";
    }
    if (!(s.from > 0.0) || !(s.to > s.from) || s.steps < 1)
      throw ValidationError("sweep: require 0 < from < to and steps >= 1");
    cfg.sweep = s;
  }

  if (const json* q = find(doc, "quadrature")) {
    if (const json* p = find(*q, "rel_tol")) cfg.quadrature.rel_tol = number_at(*p, "quadrature.rel_tol");
    if (const json* p = find(*q, "abs_tol")) cfg.quadrature.abs_tol = number_at(*p, "quadrature.abs_tol");
    if (const json* p = find(*q, "max_subdivisions")) cfg.quadrature.max_subdivisions = p->get<int>();
    if (const json* p = find(*q, "pv_window")) cfg.quadrature.pv_window = number_at(*p, "quadrature.pv_window");
    if (!(cfg.quadrature.rel_tol > 0.0) || !(cfg.quadrature.abs_tol > 0.0))
      throw ValidationError("quadrature: tolerances must be > 0");
  }

  if (const json* b = find(doc, "box")) {
    if (const json* p = find(*b, "L")) cfg.box.L = number_at(*p, "box.L");
    if (const json* p = find(*b, "k_cut")) cfg.box.k_cut = number_at(*p, "box.k_cut");
    if (!(cfg.box.L > 0.0)) throw ValidationError("box.L must be > 0");
  }

  if (const json* c = find(doc, "correlate")) {
    const json* pts = find(*c, "points");
    if (!pts || !pts->is_array())
      throw SchemaError("correlate.points: expected an array of point pairs");
    int idx = 0;
    for (const auto& pair : *pts) {
      const std::string path = "correlate.points[" + std::to_string(idx++) + "]";
      if (!pair.is_array() || pair.size() != 2)
        throw SchemaError(path + ": expected [r, r'] pair");
      cfg.correlate_points.emplace_back(vec3_at(pair[0], path + "[0]"),
                                        vec3_at(pair[1], path + "[1]"));
    }
  }

  if (const json* o = find(doc, "output")) {
    if (const json* p = find(*o, "format")) {
      if (!p->is_string()) throw SchemaError("output.format: expected a string");
      cfg.output_format = p->get<std::string>();
      if (cfg.output_format != "json" && cfg.output_format != "csv")
        throw ValidationError("output.format: must be 'json' or 'csv'");
    }
    if (const json* p = find(*o, "path")) {
      if (!p->is_string()) throw SchemaError("output.path: expected a string");
      cfg.output_path = p->get<std::string>();
    }
  }

  // Echo the fully-resolved config (defaults filled, internal units).
  json resolved{
      {"atoms",
       {{"A", atom_to_json(cfg.atoms[0])},
        {"B", atom_to_json(cfg.atoms[1])},
        {"C", atom_to_json(cfg.atoms[2])}}},
      {"units", {{"reference_wavenumber", ref}}},
      {"quadrature",
       {{"rel_tol", cfg.quadrature.rel_tol},
        {"abs_tol", cfg.quadrature.abs_tol},
        {"max_subdivisions", cfg.quadrature.max_subdivisions},
        {"pv_window", cfg.quadrature.pv_window}}},
      {"box", {{"L", cfg.box.L}, {"k_cut", cfg.box.k_cut}}},
      {"output", {{"format", cfg.output_format}, {"path", cfg.output_path}}}};
  if (cfg.sweep) {
    resolved["sweep"] = {{"family", cfg.sweep->family},
                         {"from", cfg.sweep->from},
                         {"to", cfg.sweep->to},
                         {"steps", cfg.sweep->steps},
                         {"spacing", cfg.sweep->log_spacing ? "log" : "linear"}};
  }
  if (!cfg.correlate_points.empty()) {
    json pts = json::array();
    for (const auto& [r, rp] : cfg.correlate_points)
      pts.push_back({{r.x, r.y, r.z}, {rp.x, rp.y, rp.z}});
    resolved["correlate"] = {{"points", pts}};
  }
  cfg.resolved = resolved.dump();
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

// The three atoms in the library's (ground, ground, excited) argument
// order, together with the triangle relabeled so the excited atom sits in
// the C slot.
struct OrderedSystem {
  AtomTriangle triangle;
  PolarizabilityModel A, B, C;
};

OrderedSystem ordered_system(const RunConfig& cfg) {
  const int e = cfg.excited_index;
  const int g1 = (e + 1) % 3, g2 = (e + 2) % 3;
  OrderedSystem s;
  s.triangle = triangle_from_positions(cfg.atoms[static_cast<size_t>(g1)].position,
                                       cfg.atoms[static_cast<size_t>(g2)].position,
                                       cfg.atoms[static_cast<size_t>(e)].position);
  s.A = cfg.model(g1);
  s.B = cfg.model(g2);
  s.C = cfg.model(e);
  return s;
}

json tensor_to_json(const Mat3& t) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i)
    rows.push_back({t(i, 0), t(i, 1), t(i, 2)});
  return rows;
}

json breakdown_to_json(const EnergyBreakdown& e) {
  return json{{"resonant", e.resonant},
              {"nonresonant", e.nonresonant},
              {"total", e.total},
              {"err_estimate", e.quad_error}};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (cfg.output_path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) throw Error("cannot open output path: " + cfg.output_path);
  out << text;
}

int do_correlate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.correlate_points.empty())
    throw ValidationError("correlate: config has no correlate.points");
  const int e = cfg.excited_index;
  const SourceAtom atom{cfg.atoms[static_cast<size_t>(e)].position, cfg.model(e)};
  json results = json::array();
  for (const auto& [r, rp] : cfg.correlate_points) {
    const auto c = correlation_tensor(r, rp, atom, cfg.quadrature);
    results.push_back({{"r", {r.x, r.y, r.z}},
                       {"r_prime", {rp.x, rp.y, rp.z}},
                       {"tensor", tensor_to_json(c.tensor)},
                       {"resonant_part", tensor_to_json(c.resonant_part)},
                       {"nonresonant_part", tensor_to_json(c.nonresonant_part)},
                       {"err_estimate", c.quad_error}});
  }
  const json artifact{{"config", json::parse(cfg.resolved)},
                      {"correlations", results}};
  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int do_potential(const RunConfig& cfg, std::ostream& out) {
  const OrderedSystem s = ordered_system(cfg);
  const auto e = three_body_closed(s.triangle, s.A, s.B, s.C, cfg.quadrature);
  const json artifact{{"config", json::parse(cfg.resolved)},
                      {"sides", {{"a", s.triangle.a}, {"b", s.triangle.b}, {"c", s.triangle.c}}},
                      {"potential", breakdown_to_json(e)}};
  emit(cfg, artifact.dump(2) + "\n", out);
  return 0;
}

int do_scan(const RunConfig& cfg, std::ostream& out, int threads) {
  if (!cfg.sweep) throw ValidationError("scan: config has no sweep block");
  const int e = cfg.excited_index;
  std::vector<std::pair<double, AtomTriangle>> grid;
  for (double d : cfg.sweep->values()) {
    // Equilateral family: ground atoms on the base, excited at the apex.
    const Vec3 pa{0.0, 0.0, 0.0};
    const Vec3 pb{d, 0.0, 0.0};
    const Vec3 pc{0.5 * d, 0.5 * std::sqrt(3.0) * d, 0.0};
    grid.emplace_back(d, triangle_from_positions(pa, pb, pc));
  }
  const int g1 = (e + 1) % 3, g2 = (e + 2) % 3;
  const auto rows = energy_scan(grid, cfg.model(g1), cfg.model(g2),
                                cfg.model(e), cfg.quadrature, threads);

  std::string text;
  text += "# config " + cfg.resolved + "\n";
  text += "d,a,b,c,resonant,nonresonant,total,err_estimate\n";
  for (const auto& row : rows) {
    if (!row.ok) {
      text += fmt(row.parameter) + ",,,,,,," + row.error + "\n";
      continue;
    }
    text += fmt(row.parameter) + "," + fmt(row.triangle.a) + "," +
            fmt(row.triangle.b) + "," + fmt(row.triangle.c) + "," +
            fmt(row.energy.resonant) + "," + fmt(row.energy.nonresonant) +
            "," + fmt(row.energy.total) + "," + fmt(row.energy.quad_error) +
            "\n";
  }
  emit(cfg, text, out);
  return 0;
}

int do_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyOptions vopts;
  vopts.spec = cfg.quadrature;
  const auto report = run_verification_suite(vopts);
  json checks = json::array();
  for (const auto& c : report) {
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"measured_error", c.measured},
                      {"threshold", c.threshold},
                      {"seconds", c.seconds},
                      {"note", c.note}});
  }
  const json artifact{{"config", json::parse(cfg.resolved)},
                      {"checks", checks},
                      {"all_passed", all_passed(report)}};
  emit(cfg, artifact.dump(2) + "\n", out);
  return all_passed(report) ? 0 : 3;
}

}  // namespace

int run_command(Command cmd, const RunConfig& cfg, std::ostream& fallback_out,
                int threads) {
  switch (cmd) {
    case Command::Correlate: return do_correlate(cfg, fallback_out);
    case Command::Potential: return do_potential(cfg, fallback_out);
    case Command::Scan: return do_scan(cfg, fallback_out, threads);
    case Command::Verify: return do_verify(cfg, fallback_out);
  }
  return 1;
}

}  // namespace cp3
