#include "ecsea/cli.hpp"

int main(int argc, char** argv) {
  return ecsea::run_cli({argv + 1, argv + argc});
}
