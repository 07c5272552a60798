#include "covrt/cli.hpp"

int main(int argc, char** argv) { return covrt::cli_main(argc, argv); }
