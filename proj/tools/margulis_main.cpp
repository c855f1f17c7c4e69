#include "margulis/cli.hpp"

int main(int argc, char** argv) { return margulis::run_cli(argc, argv); }
