#include "razak/cli.hpp"

int main(int argc, char** argv) { return razak::cli_main(argc, argv); }
