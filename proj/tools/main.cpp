#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "quench/errors.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  quench::cli::RunConfig config;
  try {
    config = quench::cli::parse_config(args);
  } catch (const std::exception& e) {
    const auto* err = dynamic_cast<const quench::Error*>(&e);
    std::cerr << "quench: " << (err ? quench::to_string(err->kind()) : "error") << ": " << e.what() << "\n";
    return quench::cli::exit_code_for(e);
  }
  return quench::cli::run(config, std::cout);
}
