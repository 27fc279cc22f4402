#include "pathlab/cli.hpp"

int main(int argc, char** argv) { return pathlab::cli::run(argc, argv); }
