#include "h2nt/cli.hpp"

int main(int argc, char** argv) { return h2nt::run_cli(argc, argv); }
