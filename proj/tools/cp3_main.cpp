#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cp3/config.hpp"
#include "cp3/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Dressed-vacuum field correlations and the three-body "
               "Casimir-Polder potential with one excited atom"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int threads = 1;
  double tol = 0.0;

  std::map<std::string, cp3::Command> commands = {
      {"correlate", cp3::Command::Correlate},
      {"potential", cp3::Command::Potential},
      {"scan", cp3::Command::Scan},
      {"verify", cp3::Command::Verify},
  };
  for (auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "config file (JSON)")->required();
    sub->add_option("--out", out_path, "output path (overrides config)");
    sub->add_option("--threads", threads, "worker threads for scans");
    sub->add_option("--tol", tol, "relative quadrature tolerance override");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    cp3::RunConfig cfg = cp3::parse_config_file(config_path);
    if (!out_path.empty()) cfg.output_path = out_path;
    if (tol > 0.0) cfg.quadrature.rel_tol = tol;
    const auto cmd = commands.at(app.get_subcommands().front()->get_name());
    return cp3::run_command(cmd, cfg, std::cout, threads);
  } catch (const cp3::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const cp3::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const cp3::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
