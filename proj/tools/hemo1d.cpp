#include "hemo1d/cli.hpp"

int main(int argc, char** argv) { return hemo::cli_main(argc, argv); }
