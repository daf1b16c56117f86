#include "corrgt/cli.hpp"

int main(int argc, char** argv) { return corrgt::run_cli(argc, argv); }
