#include "xkerr/cli.hpp"

int main(int argc, char** argv) { return xkerr::cli_main(argc, argv); }
