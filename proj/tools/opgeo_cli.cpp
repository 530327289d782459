#include "opgeo/cli_runner.hpp"

int main(int argc, char** argv) { return opgeo::cli_main(argc, argv); }
