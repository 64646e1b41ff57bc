#include "ecp/cli.hpp"

int main(int argc, char** argv) { return ecp::run_cli(argc, argv); }
