#include "fracns/memory.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  fracns::retain_large_allocations();
  return fracns::cli::cli_main(argc, argv);
}
