#include <cstdlib>
#include <fstream>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace opsys::cli;
  const ParseOutcome parsed = parse_args(argc, argv, std::getenv("OPSYS_SEED"));
  if (const auto* error = std::get_if<ConfigError>(&parsed.result)) {
    if (parsed.help) {
      std::cout << error->message;
      return 0;
    }
    std::cerr << "opsys: " << error->message << "\n";
    return 2;
  }
  const RunConfig& config = std::get<RunConfig>(parsed.result);

  RunResult result;
  try {
    result = run(config);
  } catch (const std::exception& e) {
    std::cerr << "opsys: " << e.what() << "\n";
    return 2;
  }

  const std::string rendered = render(result, config.output);
  if (config.output_path) {
    std::ofstream out(*config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "opsys: cannot open " << *config.output_path << " for writing\n";
      return 2;
    }
    out << rendered;
  } else {
    std::cout << rendered;
  }
  return result.exit_code;
}
