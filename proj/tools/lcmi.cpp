#include "lcmi/cli.hpp"

int main(int argc, char** argv) {
  return lcmi::cli_dispatch(argc, argv);
}
