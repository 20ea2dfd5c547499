#include "edgestat/harness/cli.hpp"

int main(int argc, char** argv) { return edgestat::cli_main(argc, argv); }
