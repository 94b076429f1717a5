#include "haltlab/cli.hpp"

int main(int argc, char** argv) { return haltlab::run_cli(argc, argv); }
