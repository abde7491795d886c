#include "pgldes/cli.hpp"

int main(int argc, char** argv) { return pgldes::run_cli(argc, argv); }
