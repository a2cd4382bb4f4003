#include "anisoperim/cli.hpp"

int main(int argc, char** argv) { return anisoperim::run_cli(argc, argv); }
