#include "porohyst_cli/cli.hpp"

int main(int argc, char** argv) { return porohyst::cli::main(argc, argv); }
