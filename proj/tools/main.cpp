#include "sphsusy/cli.hpp"

int main(int argc, char** argv) { return sphsusy::cli::run(argc, argv); }
