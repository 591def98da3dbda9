#include <iostream>

#include "fcmono/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fcmono::run_cli(args, std::cout, std::cerr);
}
