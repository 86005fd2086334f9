#include "qedv/config.hpp"
#include "qedv/run.hpp"

#include <iostream>

int main(int argc, char** argv) {
  try {
    const auto cfg = qedv::parse_run_config(argc, argv, std::cout);
    if (!cfg) return qedv::kExitOk;
    return qedv::run(*cfg, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return qedv::kExitConfig;
  }
}
