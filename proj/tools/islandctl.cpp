#include <csignal>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {
void on_signal(int) { islandctl::stop_requested() = true; }
}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::vector<std::string> args(argv + 1, argv + argc);
  return islandctl::run_cli(args);
}
