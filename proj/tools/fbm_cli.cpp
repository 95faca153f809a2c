#include "fbm/cli.hpp"

int main(int argc, char** argv) { return fbm::cli::main(argc, argv); }
