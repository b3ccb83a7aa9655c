#include "lhsba/cli.hpp"

int main(int argc, char** argv) { return lhsba::cli_main(argc, argv); }
