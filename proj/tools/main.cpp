#include "confdyn/cli.hpp"

int main(int argc, char** argv) { return confdyn::run_cli(argc, argv); }
