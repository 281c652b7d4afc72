#include "alpha/cli.hpp"

int main(int argc, char** argv) { return alpha::run_cli(argc, argv); }
