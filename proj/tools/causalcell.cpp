#include "causalcell/cli.hpp"

int main(int argc, char** argv) { return causalcell::cli::main_entry(argc, argv); }
