#include "hazekit/cli.hpp"

int main(int argc, char** argv) { return hazekit::cli::run_cli(argc, argv); }
