#include "shadowlab/cli/cli.hpp"

int main(int argc, char** argv) { return shadowlab::cli::run(argc, argv); }
