#include "toricray/cli.hpp"

int main(int argc, char** argv) { return toricray::run_cli(argc, argv); }
