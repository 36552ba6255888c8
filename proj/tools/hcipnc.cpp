#include "hcipnc/cli.hpp"

int main(int argc, char **argv) { return hcipnc::cli::main(argc, argv); }
