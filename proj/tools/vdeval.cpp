#include "vdeval/cli.hpp"

int main(int argc, char** argv) { return vdeval::run_cli(argc, argv); }
