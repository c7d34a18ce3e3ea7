#include "cli.hpp"

int main(int argc, char** argv) { return mllt::cli::run(argc, argv); }
