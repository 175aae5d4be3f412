#include "alluvial/cli.hpp"

int main(int argc, char** argv) { return alluvial::run_cli(argc, argv); }
