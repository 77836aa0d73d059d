#include "adq/cli.hpp"

int main(int argc, char** argv) { return adq::run_cli(argc, argv); }
