#include "cli.hpp"

int main(int argc, char** argv) { return rictube::cli::run(argc, argv); }
