#include "mellin/cli/commands.hpp"

int main(int argc, char** argv) { return mellin::cli::run(argc, argv); }
