#include "symres/cli.hpp"

int main(int argc, char** argv) { return symres::cli::run(argc, argv); }
