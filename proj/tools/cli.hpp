#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "quench/params.hpp"
#include "quench/scenario.hpp"

namespace quench::cli {

enum class Command { eigen, evolve, current, fermi_density, expand };
enum class Mode { single_state, fermi_gas, packet };

struct RunConfig {
  Command command = Command::evolve;
  std::string command_line;  // echoed into the manifest
  Scenario scenario = Scenario::B;
  Mode mode = Mode::single_state;
  int n = 6;  // state index, or particle number for the Fermi gas
  std::vector<double> times{0.0, 10.0, 100.0, 500.0, 1000.0, 2000.0};
  std::vector<double> points;
  std::optional<double> x_min, x_max, dx;
  PhysicalParams params;
  EvolutionMethod method = EvolutionMethod::direct;
  bool xcheck = false;
  std::string output_path;  // empty: standard output
  std::set<std::string> emit{"density", "current"};
  std::string packet_path;
  int n_max = 30;
  double source_dx = 0.0;
  bool show_help = false;
  std::string help_text;
};

// Throws quench::Error with kind usage or conflict on bad arguments.
RunConfig parse_config(const std::vector<std::string>& args);

// Writes the requested tables; returns the process exit status.
int run(const RunConfig& config, std::ostream& out);

// Exit status for an error kind: 1 for usage, conflict and configuration, 2 otherwise.
int exit_code_for(const std::exception& error);

}  // namespace quench::cli
